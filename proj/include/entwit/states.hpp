#pragma once

// Two-qubit state factories, fidelity, negativity under both sign
// conventions, labeled-state parsing, and random-state generators.

#include <cctype>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "hermitian.hpp"
#include "rng.hpp"

namespace entwit {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline DensityMatrix bell(BellState which) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (which) {
        case BellState::PhiPlus:  return pure_state({r, 0, 0, r}, {2, 2});
        case BellState::PhiMinus: return pure_state({r, 0, 0, -r}, {2, 2});
        case BellState::PsiPlus:  return pure_state({0, r, r, 0}, {2, 2});
        case BellState::PsiMinus: return pure_state({0, r, -r, 0}, {2, 2});
    }
    throw std::logic_error("bell: unreachable");
}

// cos(theta/2)|00> + sin(theta/2)|11>
inline DensityMatrix partially_entangled(double theta) {
    return pure_state({std::cos(theta / 2.0), 0, 0, std::sin(theta / 2.0)}, {2, 2});
}

// Preparation parameters for the graded family: member n uses
// theta = n*pi/30, i.e. a pulse lasting the fraction n/30 of a half turn.
struct CircuitParams {
    int n;
    double theta;
    double tau_fraction;
};

inline CircuitParams circuit_params(int n) {
    if (n < 1 || n > 14) throw std::invalid_argument("circuit_params: n must be in 1..14");
    return CircuitParams{n, n * kPi / 30.0, n / 30.0};
}

inline DensityMatrix entangled_family(int n) {
    return partially_entangled(circuit_params(n).theta);
}

// |00><00| and |++><++|, the two product-state controls.
inline std::vector<DensityMatrix> separable_examples() {
    std::vector<DensityMatrix> out;
    out.push_back(pure_state({1, 0, 0, 0}, {2, 2}));
    out.push_back(pure_state({0.5, 0.5, 0.5, 0.5}, {2, 2}));
    return out;
}

enum class Convention { Table, TraceNorm };

// Table: sum of |negative eigenvalues| of the partial transpose (Bell = 1/2).
// TraceNorm: ||rho^PT||_1 - 1 (Bell = 1), twice the former for unit trace.
inline double negativity(const DensityMatrix& rho, Convention conv, int sub = 0) {
    const HermitianMatrix pt = partial_transpose(rho.op(), sub);
    if (conv == Convention::Table) return negative_eigenvalue_sum(pt);
    return trace_norm(pt) - 1.0;
}

// Uhlmann-Jozsa fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2 via eigendecompositions.
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.side() != b.side()) throw std::invalid_argument("fidelity: dimension mismatch");
    // Square roots amplify eigensolver noise near zero (sqrt(1e-17) is 3e-9),
    // so eigenvalues at round-off scale count as exactly zero.
    const double floor_at = 64.0 * std::numeric_limits<double>::epsilon();
    const Spectrum sa = eig(a.op());
    const int n = a.side();
    ComplexMatrix root(n, n);
    for (int k = 0; k < n; ++k) {
        const double l = sa.eigenvalues[k];
        if (l < floor_at) continue;
        const double sl = std::sqrt(l);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                root(i, j) += sl * sa.eigenvectors(i, k) * std::conj(sa.eigenvectors(j, k));
    }
    const ComplexMatrix m = root * b.mat() * root;
    double f = 0.0;
    for (double l : eig(HermitianMatrix(m, a.dims())).eigenvalues)
        if (l >= floor_at) f += std::sqrt(l);
    return f * f;
}

// (1-eps) I/d + eps |psi><psi|; the traceless deviation part carries all of
// the signal, which is why eps cancels from normalized expectation values.
struct PseudopureState {
    DensityMatrix pure_part;
    double epsilon;

    DensityMatrix assemble() const {
        if (epsilon < 0.0 || epsilon > 1.0)
            throw std::invalid_argument("PseudopureState: epsilon outside [0,1]");
        const int n = pure_part.side();
        ComplexMatrix m = (epsilon * pure_part.mat()) +
                          ((1.0 - epsilon) / n) * ComplexMatrix::identity(n);
        return DensityMatrix(std::move(m), pure_part.dims());
    }

    HermitianMatrix deviation() const {
        const int n = pure_part.side();
        ComplexMatrix m =
            epsilon * (pure_part.mat() - (1.0 / n) * ComplexMatrix::identity(n));
        return HermitianMatrix(std::move(m), pure_part.dims());
    }
};

// ---- random-state generators (tests, soundness sweeps) ----

inline std::vector<cplx> random_unit_vector(int n, Rng& rng) {
    std::vector<cplx> v(n);
    double n2 = 0.0;
    do {
        for (auto& x : v) x = cplx(rng.gaussian(), rng.gaussian());
        n2 = 0.0;
        for (const auto& x : v) n2 += std::norm(x);
    } while (n2 < 1e-12);
    const double s = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= s;
    return v;
}

inline DensityMatrix random_pure(const std::vector<int>& dims, Rng& rng) {
    int n = 1;
    for (int d : dims) n *= d;
    return pure_state(random_unit_vector(n, rng), dims);
}

inline DensityMatrix random_product_pure(const std::vector<int>& dims, Rng& rng) {
    std::vector<cplx> v{1.0};
    for (int d : dims) {
        const std::vector<cplx> w = random_unit_vector(d, rng);
        std::vector<cplx> next(v.size() * w.size());
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = 0; j < w.size(); ++j) next[i * w.size() + j] = v[i] * w[j];
        v = std::move(next);
    }
    return pure_state(v, dims);
}

inline DensityMatrix random_mixed(const std::vector<int>& dims, Rng& rng) {
    int n = 1;
    for (int d : dims) n *= d;
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
    ComplexMatrix m = g * adjoint(g);
    const double t = trace(m).real();
    return DensityMatrix((1.0 / t) * m, dims);
}

// Haar-ish random unitary via Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_unitary(int n, Rng& rng) {
    ComplexMatrix u(n, n);
    for (int c = 0; c < n; ++c) {
        std::vector<cplx> v = random_unit_vector(n, rng);
        for (int prev = 0; prev < c; ++prev) {
            cplx ip = 0.0;
            for (int i = 0; i < n; ++i) ip += std::conj(u(i, prev)) * v[i];
            for (int i = 0; i < n; ++i) v[i] -= ip * u(i, prev);
        }
        double n2 = 0.0;
        for (const auto& x : v) n2 += std::norm(x);
        const double s = 1.0 / std::sqrt(std::max(n2, 1e-300));
        for (int i = 0; i < n; ++i) u(i, c) = v[i] * s;
    }
    return u;
}

// ---- labeled states ----
// Grammar: B1..B4 (Bell), S1 S2 (separable), E1..E14 (graded family),
// H:alpha=<x>,gamma=<y> (qubit-qutrit two-parameter class, see hybrid23.hpp).

struct StateLabel {
    std::string text;
    // exactly one of these is set
    std::optional<BellState> bell;
    std::optional<int> separable_index;  // 1 or 2
    std::optional<int> family_index;     // 1..14
    std::optional<std::pair<double, double>> hybrid;  // (alpha, gamma)
};

inline StateLabel parse_state_label(const std::string& text) {
    StateLabel out;
    out.text = text;
    auto fail = [&text]() -> StateLabel {
        throw std::invalid_argument("unknown state label: '" + text + "'");
    };
    if (text.empty()) return fail();
    if (text[0] == 'B' || text[0] == 'S' || text[0] == 'E') {
        int idx = 0;
        for (size_t i = 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return fail();
            idx = idx * 10 + (text[i] - '0');
        }
        if (text.size() < 2) return fail();
        if (text[0] == 'B') {
            static const BellState order[4] = {BellState::PhiMinus, BellState::PhiPlus,
                                               BellState::PsiPlus, BellState::PsiMinus};
            if (idx < 1 || idx > 4) return fail();
            out.bell = order[idx - 1];
        } else if (text[0] == 'S') {
            if (idx < 1 || idx > 2) return fail();
            out.separable_index = idx;
        } else {
            if (idx < 1 || idx > 14) return fail();
            out.family_index = idx;
        }
        return out;
    }
    if (text.rfind("H:", 0) == 0) {
        double alpha = std::nan(""), gamma = std::nan("");
        std::stringstream ss(text.substr(2));
        std::string part;
        while (std::getline(ss, part, ',')) {
            const auto eq = part.find('=');
            if (eq == std::string::npos) return fail();
            const std::string key = part.substr(0, eq);
            char* end = nullptr;
            const std::string val = part.substr(eq + 1);
            const double x = std::strtod(val.c_str(), &end);
            if (end == nullptr || *end != '\0' || val.empty()) return fail();
            if (key == "alpha") alpha = x;
            else if (key == "gamma") gamma = x;
            else return fail();
        }
        if (std::isnan(alpha) || std::isnan(gamma)) return fail();
        out.hybrid = {alpha, gamma};
        return out;
    }
    return fail();
}

// Bell labels are an arbitrary recorded assignment:
// B1 = phi-, B2 = phi+, B3 = psi+, B4 = psi-.
inline DensityMatrix two_qubit_state_from_label(const StateLabel& l) {
    if (l.bell) return bell(*l.bell);
    if (l.separable_index) return separable_examples()[*l.separable_index - 1];
    if (l.family_index) return entangled_family(*l.family_index);
    throw std::invalid_argument("label '" + l.text + "' is not a two-qubit state");
}

}  // namespace entwit
