#pragma once

// Hermitian operators on small tensor-product spaces: validated wrappers,
// Kronecker products, partial transposition, a cyclic Jacobi eigensolver,
// and the negativity primitives built on it.

#include <algorithm>
#include <numeric>

#include "complexmat.hpp"

namespace entwit {

// Hermiticity defects below this are symmetrized away; larger ones are errors.
inline constexpr double kHermTol = 1e-12;

class HermitianMatrix {
public:
    HermitianMatrix() = default;

    HermitianMatrix(ComplexMatrix m, std::vector<int> dims) : dims_(std::move(dims)) {
        int prod = 1;
        for (int d : dims_) {
            if (d < 1) throw std::invalid_argument("HermitianMatrix: bad subsystem dim");
            prod *= d;
        }
        if (m.rows() != m.cols() || m.rows() != prod)
            throw std::invalid_argument("HermitianMatrix: shape does not match dims");
        const double defect = hermiticity_defect(m);
        if (!(defect <= kHermTol))
            throw std::invalid_argument("HermitianMatrix: input not Hermitian (defect " +
                                        std::to_string(defect) + ")");
        mat_ = ComplexMatrix(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i) {
            mat_(i, i) = m(i, i).real();
            for (int j = i + 1; j < m.cols(); ++j) {
                const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                mat_(i, j) = v;
                mat_(j, i) = std::conj(v);
            }
        }
    }

    explicit HermitianMatrix(ComplexMatrix m)
        : HermitianMatrix(std::move(m), default_dims(m.rows())) {}

    int side() const { return mat_.rows(); }
    const std::vector<int>& dims() const { return dims_; }
    const ComplexMatrix& mat() const { return mat_; }

    const cplx& operator()(int i, int j) const { return mat_(i, j); }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < side(); ++i) t += mat_(i, i).real();
        return t;
    }

private:
    static std::vector<int> default_dims(int n) { return {n}; }

    ComplexMatrix mat_;
    std::vector<int> dims_;
};

inline HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return HermitianMatrix(kron(a.mat(), b.mat()), std::move(dims));
}

inline double trace_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
    return trace_inner(a.mat(), b.mat());
}

// Transpose the indices of subsystem `sub` only. A pure entry permutation,
// so involution and norm preservation hold bitwise.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims,
                                       int sub) {
    const int k = static_cast<int>(dims.size());
    if (sub < 0 || sub >= k) throw std::invalid_argument("partial_transpose: bad subsystem");
    int right = 1;
    for (int i = sub + 1; i < k; ++i) right *= dims[i];
    const int d = dims[sub];
    ComplexMatrix r(m.rows(), m.cols());
    for (int row = 0; row < m.rows(); ++row) {
        const int rs = (row / right) % d;
        for (int col = 0; col < m.cols(); ++col) {
            const int cs = (col / right) % d;
            const int row2 = row + (cs - rs) * right;
            const int col2 = col + (rs - cs) * right;
            r(row2, col2) = m(row, col);
        }
    }
    return r;
}

inline HermitianMatrix partial_transpose(const HermitianMatrix& m, int sub) {
    return HermitianMatrix(partial_transpose(m.mat(), m.dims(), sub), m.dims());
}

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column i pairs with eigenvalues[i]
};

// Cyclic Jacobi for complex Hermitian matrices. Off-diagonal Frobenius norm
// driven below 1e-12 (relative to the matrix scale), at most 100 sweeps.
inline Spectrum eig(const HermitianMatrix& h) {
    const int n = h.side();
    ComplexMatrix a = h.mat();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double tol = 1e-12 * std::max(1.0, frobenius_norm(a));

    auto offdiag = [&a, n]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag() <= tol) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= tol / (n * n + 1.0)) continue;
                const cplx phase = a(p, q) / apq;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // columns: col_p <- c*col_p - s*conj(phase)*col_q,
                //          col_q <- s*phase*col_p + c*col_q applied as A <- J^H A J
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * phase * vip + c * viq;
                }
            }
    }
    if (offdiag() > 1e-8 * std::max(1.0, frobenius_norm(h.mat())))
        throw std::runtime_error("eig: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

inline double min_eigenvalue(const HermitianMatrix& h) { return eig(h).eigenvalues.front(); }

// Sum of |lambda| over strictly negative eigenvalues.
inline double negative_eigenvalue_sum(const HermitianMatrix& h) {
    double s = 0.0;
    for (double l : eig(h).eigenvalues)
        if (l < 0.0) s -= l;
    return s;
}

// Sum of |lambda| (trace norm of a Hermitian matrix).
inline double trace_norm(const HermitianMatrix& h) {
    double s = 0.0;
    for (double l : eig(h).eigenvalues) s += std::abs(l);
    return s;
}

class DensityMatrix {
public:
    DensityMatrix() = default;

    DensityMatrix(ComplexMatrix m, std::vector<int> dims) : h_(std::move(m), std::move(dims)) {
        if (std::abs(h_.trace() - 1.0) > 1e-10)
            throw std::invalid_argument("DensityMatrix: trace != 1");
        if (min_eigenvalue(h_) < -1e-10)
            throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }

    int side() const { return h_.side(); }
    const std::vector<int>& dims() const { return h_.dims(); }
    const HermitianMatrix& op() const { return h_; }
    const ComplexMatrix& mat() const { return h_.mat(); }

private:
    HermitianMatrix h_;
};

inline DensityMatrix pure_state(const std::vector<cplx>& amps, std::vector<int> dims) {
    double n2 = 0.0;
    for (const auto& a : amps) n2 += std::norm(a);
    if (n2 <= 0.0) throw std::invalid_argument("pure_state: zero vector");
    const int n = static_cast<int>(amps.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = amps[i] * std::conj(amps[j]) / n2;
    return DensityMatrix(std::move(m), std::move(dims));
}

}  // namespace entwit
