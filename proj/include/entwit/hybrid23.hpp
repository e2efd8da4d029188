#pragma once

// Qubit-qutrit (2x3) state class, its partial-transpose witness, the Bloch
// expansion of 6x6 operators, and detection-fraction studies for witnesses
// restricted to a subset of Bloch coefficients.
//
// The state class is parameterized by (alpha, gamma) on the rectangle
// alpha in [0, 1/2], gamma in [0, 1]:
//
//   rho = alpha (|02><02| + |12><12|)
//       + beta (P_phi+ + P_phi- + P_psi+) + gamma P_psi-,
//   beta = (1 - 2 alpha - gamma) / 3.
//
// Physical states additionally need beta >= 0. The partial transpose has
// eigenvalues {alpha (x2), (beta+gamma)/2 (x3), (1 - 2 alpha - 2 gamma)/2},
// so the class is entangled exactly when alpha + gamma > 1/2.
//
// The derived witness carries its diagonal weights at |00><00| and |11><11|.
// A variant that instead places the second weight at |12><12| fails the
// class-validity check: its trace against the state at (alpha, gamma) =
// (0, 0.45), which is separable, is negative. detection_fraction confirms
// both placements, accepting the former and rejecting the latter.

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include "observables.hpp"
#include "rng.hpp"
#include "sdp.hpp"
#include "states.hpp"

namespace entwit {

inline const std::vector<ComplexMatrix>& gell_mann() {
    static const std::vector<ComplexMatrix> lam = [] {
        std::vector<ComplexMatrix> m(8, ComplexMatrix(3, 3));
        m[0](0, 1) = 1;
        m[0](1, 0) = 1;
        m[1](0, 1) = cplx(0, -1);
        m[1](1, 0) = cplx(0, 1);
        m[2](0, 0) = 1;
        m[2](1, 1) = -1;
        m[3](0, 2) = 1;
        m[3](2, 0) = 1;
        m[4](0, 2) = cplx(0, -1);
        m[4](2, 0) = cplx(0, 1);
        m[5](1, 2) = 1;
        m[5](2, 1) = 1;
        m[6](1, 2) = cplx(0, -1);
        m[6](2, 1) = cplx(0, 1);
        const double r = 1.0 / std::sqrt(3.0);
        m[7](0, 0) = r;
        m[7](1, 1) = r;
        m[7](2, 2) = -2.0 * r;
        return m;
    }();
    return lam;
}

struct TwoParamState {
    double alpha = 0.0;
    double gamma = 0.0;

    double beta() const { return (1.0 - 2.0 * alpha - gamma) / 3.0; }

    // Hermitian unit-trace matrix of the class; not necessarily positive
    // (beta may be negative off the physical simplex).
    ComplexMatrix formal_matrix() const {
        const double b = beta();
        ComplexMatrix m(6, 6);
        m(0, 0) = b;  // |00>
        m(4, 4) = b;  // |11>
        m(2, 2) = alpha;
        m(5, 5) = alpha;
        m(1, 1) = 0.5 * (b + gamma);
        m(3, 3) = 0.5 * (b + gamma);
        m(1, 3) = 0.5 * (b - gamma);
        m(3, 1) = 0.5 * (b - gamma);
        return m;
    }

    HermitianMatrix formal_op() const { return HermitianMatrix(formal_matrix(), {2, 3}); }

    DensityMatrix assemble() const {
        if (beta() < -1e-12)
            throw std::invalid_argument("TwoParamState: beta < 0, not a physical state");
        return DensityMatrix(formal_matrix(), {2, 3});
    }

    bool entangled() const { return alpha + gamma > 0.5; }
};

// Closed-form partial-transpose eigenvalues; the degenerate middle triple
// equals (beta + gamma)/2 = (1 - 2 alpha + 2 gamma)/6.
inline std::array<double, 6> pt_closed_form(const TwoParamState& s) {
    const double b = s.beta();
    std::array<double, 6> e{s.alpha,
                            s.alpha,
                            0.5 * (b + s.gamma),
                            0.5 * (b + s.gamma),
                            0.5 * (b + s.gamma),
                            0.5 * (1.0 - 2.0 * s.alpha - 2.0 * s.gamma)};
    std::sort(e.begin(), e.end());
    return e;
}

// Numerically computed partial-transpose spectrum, ascending.
inline std::vector<double> pt_spectrum(const TwoParamState& s) {
    return eig(partial_transpose(s.formal_op(), 0)).eigenvalues;
}

inline double class_negativity(double alpha, double gamma, Convention conv) {
    const double n = std::max(0.0, alpha + gamma - 0.5);
    return conv == Convention::Table ? n : 2.0 * n;
}

// Witness from the partial transpose: at a reference entangled point the
// partial transpose has a single negative eigenvalue; with |eta> its
// eigenvector, W = (|eta><eta|)^{T_A} satisfies tr(W sigma) >= 0 on all
// separable sigma and tr(W rho(alpha, gamma)) = (1 - 2 alpha - 2 gamma)/2.
struct DerivedWitness {
    HermitianMatrix witness;
    double reference_eigenvalue = 0.0;  // the negative PT eigenvalue used
};

inline DerivedWitness derive_witness(double alpha = 0.3, double gamma = 0.5) {
    const TwoParamState ref{alpha, gamma};
    const HermitianMatrix pt = partial_transpose(ref.formal_op(), 0);
    const Spectrum spec = eig(pt);
    if (spec.eigenvalues.front() >= 0.0)
        throw std::invalid_argument("derive_witness: reference point has positive partial transpose");
    ComplexMatrix proj(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            proj(i, j) = spec.eigenvectors(i, 0) * std::conj(spec.eigenvectors(j, 0));
    return DerivedWitness{
        HermitianMatrix(partial_transpose(proj, {2, 3}, 0), {2, 3}),
        spec.eigenvalues.front()};
}

// Bloch expansion of a 6x6 Hermitian operator,
//
//   O = (1/6) [ c0 I + sum_i u_i sigma_i x I
//             + sqrt(3) sum_j v_j I x lambda_j
//             + sum_ij beta_ij sigma_i x lambda_j ].
struct BlochCoefficients {
    double c0 = 0.0;
    std::array<double, 3> u{};
    std::array<double, 8> v{};
    std::array<std::array<double, 8>, 3> beta{};

    static constexpr int kCount = 35;  // u(3) + v(8) + beta(24), c0 separate

    double by_index(int i) const {
        if (i < 0 || i >= kCount) throw std::out_of_range("BlochCoefficients::by_index");
        if (i < 3) return u[i];
        if (i < 11) return v[i - 3];
        return beta[(i - 11) / 8][(i - 11) % 8];
    }

    void set_index(int i, double x) {
        if (i < 0 || i >= kCount) throw std::out_of_range("BlochCoefficients::set_index");
        if (i < 3)
            u[i] = x;
        else if (i < 11)
            v[i - 3] = x;
        else
            beta[(i - 11) / 8][(i - 11) % 8] = x;
    }

    static std::string label_for_index(int i) {
        if (i < 3) return "u" + std::to_string(i + 1);
        if (i < 11) return "v" + std::to_string(i - 2);
        return "b" + std::to_string((i - 11) / 8 + 1) + std::to_string((i - 11) % 8 + 1);
    }

    int nonzero_count(double tol = 1e-10) const {
        int n = 0;
        for (int i = 0; i < kCount; ++i)
            if (std::abs(by_index(i)) > tol) ++n;
        return n;
    }
};

inline BlochCoefficients bloch_decompose(const HermitianMatrix& op) {
    if (op.side() != 6) throw std::invalid_argument("bloch_decompose: need a 6x6 operator");
    using gates::pauli;
    const auto& lam = gell_mann();
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    BlochCoefficients c;
    c.c0 = op.trace();
    const char axes[3] = {'x', 'y', 'z'};
    for (int i = 0; i < 3; ++i)
        c.u[i] = trace_inner(op.mat(), kron(pauli(axes[i]), i3));
    for (int j = 0; j < 8; ++j)
        c.v[j] = 0.5 * std::sqrt(3.0) * trace_inner(op.mat(), kron(i2, lam[j]));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 8; ++j)
            c.beta[i][j] = 1.5 * trace_inner(op.mat(), kron(pauli(axes[i]), lam[j]));
    return c;
}

inline HermitianMatrix bloch_assemble(const BlochCoefficients& c) {
    using gates::pauli;
    const auto& lam = gell_mann();
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    ComplexMatrix m = c.c0 * ComplexMatrix::identity(6);
    const char axes[3] = {'x', 'y', 'z'};
    for (int i = 0; i < 3; ++i)
        if (c.u[i] != 0.0) m = m + c.u[i] * kron(pauli(axes[i]), i3);
    for (int j = 0; j < 8; ++j)
        if (c.v[j] != 0.0) m = m + (std::sqrt(3.0) * c.v[j]) * kron(i2, lam[j]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 8; ++j)
            if (c.beta[i][j] != 0.0) m = m + c.beta[i][j] * kron(pauli(axes[i]), lam[j]);
    return HermitianMatrix((1.0 / 6.0) * m, {2, 3});
}

inline double formal_trace(const HermitianMatrix& w, double alpha, double gamma) {
    return trace_inner(w.mat(), TwoParamState{alpha, gamma}.formal_matrix());
}

// Restriction of the derived witness to a subset of its nonzero Bloch
// coefficients. Two normalizations are kept for each support:
//  - projection: surviving coefficients keep their original values;
//  - tight: the traceless part is rescaled so the minimum of tr(W rho)
//    over the separable corner states (0,0), (1/2,0), (0,1/2) is zero.
// A candidate is usable only if it stays nonnegative on the separable
// triangle and goes negative somewhere over the entangled region.
struct WitnessCandidate {
    std::vector<std::string> support;
    std::string normalization;  // "projection" or "tight"
    double scale = 1.0;         // factor on the traceless part
    HermitianMatrix op;
    bool class_valid = false;
    bool detecting = false;
    bool decomposable = false;  // P + Q^{T_A} split exists (soundness beyond the class)
    double fraction = 0.0;
};

namespace detail {

inline const std::array<std::pair<double, double>, 3>& triangle_vertices() {
    static const std::array<std::pair<double, double>, 3> v{
        {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}}};
    return v;
}

inline const std::array<std::pair<double, double>, 4>& entangled_region_vertices() {
    static const std::array<std::pair<double, double>, 4> v{
        {{0.5, 0.0}, {0.0, 0.5}, {0.0, 1.0}, {0.5, 1.0}}};
    return v;
}

}  // namespace detail

enum class Domain { Rectangle, Physical };

struct FractionOptions {
    Domain domain = Domain::Rectangle;
    bool monte_carlo = false;
    int resolution = 400;     // grid points per axis
    int samples = 200000;     // Monte Carlo draws
    std::uint64_t seed = 1;
};

// Fraction of the entangled parameter region on which tr(W rho) < 0,
// by midpoint grid or uniform sampling over the class rectangle.
inline double detection_fraction(const HermitianMatrix& w, const FractionOptions& opts = {}) {
    if (w.side() != 6) throw std::invalid_argument("detection_fraction: need a 6x6 witness");
    std::int64_t entangled = 0, detected = 0;
    const auto tally = [&](double a, double g) {
        const TwoParamState s{a, g};
        if (opts.domain == Domain::Physical && s.beta() < 0.0) return;
        if (!s.entangled()) return;
        ++entangled;
        if (trace_inner(w.mat(), s.formal_matrix()) < -1e-12) ++detected;
    };
    if (opts.monte_carlo) {
        Rng rng(opts.seed);
        for (int i = 0; i < opts.samples; ++i)
            tally(0.5 * rng.uniform(), rng.uniform());
    } else {
        const int n = opts.resolution;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                tally(0.5 * (i + 0.5) / n, (j + 0.5) / n);
    }
    if (entangled == 0) throw std::runtime_error("detection_fraction: empty entangled region");
    return static_cast<double>(detected) / static_cast<double>(entangled);
}

inline WitnessCandidate restricted_witness(const std::vector<std::string>& support,
                                           const std::string& normalization) {
    const BlochCoefficients full = bloch_decompose(derive_witness().witness);
    BlochCoefficients keep;
    keep.c0 = full.c0;
    for (const auto& name : support) {
        bool found = false;
        for (int i = 0; i < BlochCoefficients::kCount; ++i)
            if (BlochCoefficients::label_for_index(i) == name) {
                keep.set_index(i, full.by_index(i));
                found = true;
                break;
            }
        if (!found)
            throw std::invalid_argument("restricted_witness: unknown coefficient '" + name + "'");
    }

    WitnessCandidate cand;
    cand.support = support;
    cand.normalization = normalization;
    cand.op = bloch_assemble(keep);

    if (normalization == "tight") {
        // tr(W_s rho) = c0/6 + s h(alpha, gamma) with h affine; the binding
        // separable vertex fixes the largest admissible s.
        double s = std::numeric_limits<double>::infinity();
        for (const auto& [a, g] : detail::triangle_vertices()) {
            const double h = formal_trace(cand.op, a, g) - keep.c0 / 6.0;
            if (h < -1e-15) s = std::min(s, (keep.c0 / 6.0) / (-h));
        }
        if (!std::isfinite(s)) s = 1.0;
        cand.scale = s;
        for (int i = 0; i < BlochCoefficients::kCount; ++i)
            keep.set_index(i, s * keep.by_index(i));
        cand.op = bloch_assemble(keep);
    } else if (normalization != "projection") {
        throw std::invalid_argument("restricted_witness: unknown normalization '" +
                                    normalization + "'");
    }

    cand.class_valid = true;
    for (const auto& [a, g] : detail::triangle_vertices())
        if (formal_trace(cand.op, a, g) < -1e-12) cand.class_valid = false;
    for (const auto& [a, g] : detail::entangled_region_vertices())
        if (formal_trace(cand.op, a, g) < -1e-12) cand.detecting = true;
    cand.decomposable = decomposability_check(cand.op).decomposable;
    cand.fraction = detection_fraction(cand.op);
    return cand;
}

// Index form: positions into the 35-coefficient Bloch vector.
inline WitnessCandidate restricted_witness(const std::vector<int>& subset,
                                           const std::string& normalization) {
    std::vector<std::string> names;
    names.reserve(subset.size());
    for (int i : subset) {
        if (i < 0 || i >= BlochCoefficients::kCount)
            throw std::invalid_argument("restricted_witness: coefficient index " +
                                        std::to_string(i) + " out of range");
        names.push_back(BlochCoefficients::label_for_index(i));
    }
    return restricted_witness(names, normalization);
}

// Worst usable detection fraction as a function of the number of measured
// Bloch coefficients of the witness.
struct FractionPoint {
    int k = 0;
    double fraction = 0.0;
    WitnessCandidate worst;
    std::vector<WitnessCandidate> candidates;  // every (support, normalization) pair
};

inline std::vector<FractionPoint> fraction_curve(const FractionOptions& opts = {}) {
    const BlochCoefficients full = bloch_decompose(derive_witness().witness);
    std::vector<std::string> names;
    for (int i = 0; i < BlochCoefficients::kCount; ++i)
        if (std::abs(full.by_index(i)) > 1e-10)
            names.push_back(BlochCoefficients::label_for_index(i));

    std::vector<FractionPoint> out;
    const int m = static_cast<int>(names.size());
    for (int k = 1; k <= m; ++k) {
        FractionPoint pt;
        pt.k = k;
        for (int mask = 0; mask < (1 << m); ++mask) {
            if (std::popcount(static_cast<unsigned>(mask)) != k) continue;
            std::vector<std::string> support;
            for (int b = 0; b < m; ++b)
                if (mask & (1 << b)) support.push_back(names[b]);
            for (const char* norm : {"projection", "tight"}) {
                WitnessCandidate c = restricted_witness(support, norm);
                c.fraction = detection_fraction(c.op, opts);
                pt.candidates.push_back(std::move(c));
            }
        }
        bool have = false;
        for (const auto& c : pt.candidates) {
            if (!c.class_valid || !c.detecting) continue;
            if (!have || c.fraction < pt.fraction) {
                pt.fraction = c.fraction;
                pt.worst = c;
                have = true;
            }
        }
        if (!have) throw std::runtime_error("fraction_curve: no usable witness at k=" +
                                            std::to_string(k));
        out.push_back(std::move(pt));
    }
    return out;
}

// V = U x (U + [1]) acting on qubit x qutrit; the class is invariant under
// conjugation by any such V.
inline ComplexMatrix two_three_symmetry(const ComplexMatrix& u) {
    if (u.rows() != 2 || u.cols() != 2)
        throw std::invalid_argument("two_three_symmetry: need a 2x2 unitary");
    ComplexMatrix u3(3, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u3(i, j) = u(i, j);
    u3(2, 2) = 1.0;
    return kron(u, u3);
}

}  // namespace entwit
