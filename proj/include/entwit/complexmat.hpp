#pragma once

// Dense complex matrix kernel sized for few-qubit work (side <= ~16).
// Row-major storage, value semantics, no external dependencies.

#include <algorithm>
#include <complex>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace entwit {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("ComplexMatrix: negative size");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

inline ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("matrix add: shape mismatch");
    ComplexMatrix r = x;
    for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] += y.data()[i];
    return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("matrix sub: shape mismatch");
    ComplexMatrix r = x;
    for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] -= y.data()[i];
    return r;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& x) {
    ComplexMatrix r = x;
    for (auto& v : r.data()) v *= s;
    return r;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& x) { return cplx(s, 0.0) * x; }

inline ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols() != y.rows()) throw std::invalid_argument("matrix mul: shape mismatch");
    ComplexMatrix r(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < y.cols(); ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

inline ComplexMatrix adjoint(const ComplexMatrix& x) {
    ComplexMatrix r(x.cols(), x.rows());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(j, i) = std::conj(x(i, j));
    return r;
}

inline cplx trace(const ComplexMatrix& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("trace: not square");
    cplx t = 0.0;
    for (int i = 0; i < x.rows(); ++i) t += x(i, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix& x) {
    double s = 0.0;
    for (const auto& v : x.data()) s += std::norm(v);
    return std::sqrt(s);
}

// max_ij |x_ij - adjoint(x)_ij|, the hermiticity defect
inline double hermiticity_defect(const ComplexMatrix& x) {
    if (x.rows() != x.cols()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = i; j < x.cols(); ++j)
            d = std::max(d, std::abs(x(i, j) - std::conj(x(j, i))));
    return d;
}

inline ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix r(x.rows() * y.rows(), x.cols() * y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            const cplx xij = x(i, j);
            if (xij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < y.rows(); ++k)
                for (int l = 0; l < y.cols(); ++l)
                    r(i * y.rows() + k, j * y.cols() + l) = xij * y(k, l);
        }
    return r;
}

// Re tr(x y); exact real part of the Hilbert-Schmidt pairing.
inline double trace_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != y.cols() || x.cols() != y.rows())
        throw std::invalid_argument("trace_inner: shape mismatch");
    double s = 0.0;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            s += x(i, j).real() * y(j, i).real() - x(i, j).imag() * y(j, i).imag();
    return s;
}

// Cholesky A = L L^dagger for Hermitian positive definite A.
// Returns false (leaving l unspecified) if a pivot drops below eps.
inline bool cholesky(const ComplexMatrix& a, ComplexMatrix& l, double eps = 0.0) {
    const int n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("cholesky: not square");
    l = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > eps)) return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return true;
}

// Solve L x = b (lower triangular) in place over columns of b.
inline ComplexMatrix forward_solve(const ComplexMatrix& l, const ComplexMatrix& b) {
    const int n = l.rows();
    ComplexMatrix x = b;
    for (int c = 0; c < b.cols(); ++c)
        for (int i = 0; i < n; ++i) {
            cplx s = x(i, c);
            for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
    return x;
}

// Solve L^dagger x = b (upper triangular via the stored lower factor).
inline ComplexMatrix backward_solve(const ComplexMatrix& l, const ComplexMatrix& b) {
    const int n = l.rows();
    ComplexMatrix x = b;
    for (int c = 0; c < b.cols(); ++c)
        for (int i = n - 1; i >= 0; --i) {
            cplx s = x(i, c);
            for (int k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x(k, c);
            x(i, c) = s / std::conj(l(i, i));
        }
    return x;
}

// Inverse of a Hermitian positive definite matrix via Cholesky.
inline ComplexMatrix hpd_inverse(const ComplexMatrix& a) {
    ComplexMatrix l;
    if (!cholesky(a, l)) throw std::runtime_error("hpd_inverse: matrix not positive definite");
    return backward_solve(l, forward_solve(l, ComplexMatrix::identity(a.rows())));
}

// Symmetric positive definite real solve (Newton systems); jitters the
// diagonal if the factorization stalls, since barrier Hessians can be
// near-singular close to the cone boundary.
inline std::vector<double> spd_solve(std::vector<double> h, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    auto H = [&h, n](int i, int j) -> double& { return h[static_cast<size_t>(i) * n + j]; };
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(H(i, i)));
    if (scale == 0.0) scale = 1.0;
    for (double jitter = 0.0;; jitter = (jitter == 0.0 ? 1e-14 * scale : jitter * 100.0)) {
        if (jitter > 1e-2 * scale) throw std::runtime_error("spd_solve: factorization failed");
        std::vector<double> l(h.size(), 0.0);
        auto L = [&l, n](int i, int j) -> double& { return l[static_cast<size_t>(i) * n + j]; };
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            double d = H(j, j) + jitter;
            for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
            if (!(d > 0.0)) { ok = false; break; }
            L(j, j) = std::sqrt(d);
            for (int i = j + 1; i < n; ++i) {
                double s = H(i, j);
                for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
                L(i, j) = s / L(j, j);
            }
        }
        if (!ok) continue;
        std::vector<double> x = b;
        for (int i = 0; i < n; ++i) {
            double s = x[i];
            for (int k = 0; k < i; ++k) s -= L(i, k) * x[k];
            x[i] = s / L(i, i);
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = x[i];
            for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[k];
            x[i] = s / L(i, i);
        }
        return x;
    }
}

}  // namespace entwit
