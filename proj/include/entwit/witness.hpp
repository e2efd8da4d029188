#pragma once

// Entanglement witnesses from partial expectation values.
//
// Given expectation values m_i of a subset of the product observables, the
// strongest decomposable witness compatible with the data solves
//
//     minimize    tr(W rho) = 1/d + c.m
//     subject to  W = I/d + sum_i c_i O_i = P + Q^{T_A},  P >= 0, Q >= 0.
//
// The observables are traceless, so tr W = 1 is built in. A strictly
// negative optimum certifies entanglement of every state consistent with
// the measured values; the recovered dual matrix Y acts as an independent
// certificate (Y >= 0, Y^{T_A} >= 0, tr(Y O_i) = m_i, and the objective
// equals -tr(Y)/d at the optimum, up to the reported gap).

#include <optional>

#include "observables.hpp"
#include "sdp.hpp"
#include "states.hpp"

namespace entwit {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WitnessProblem {
    std::vector<std::string> labels;
    std::vector<double> values;
    double sigma = 0.0;
    double tol = 1e-7;
};

inline WitnessProblem make_problem(const MeasurementRecord& record) {
    return WitnessProblem{record.labels, record.values, record.sigma, 1e-7};
}

struct WitnessSolution {
    HermitianMatrix witness;
    HermitianMatrix p_part;   // W - Q^{T_A}
    HermitianMatrix q_part;   // Q
    std::vector<double> coefficients;
    double objective = 0.0;   // tr(W rho) for any rho matching the data
    double eps_detect = 0.0;  // noise-aware detection margin
    bool detected = false;
    double duality_gap = 0.0;
    double dual_residual = 0.0;     // max_i |tr(Y O_i) - m_i|
    double equality_residual = 0.0; // ||W - P - Q^{T_A}||_F
    double min_eig_p = 0.0;
    double min_eig_q = 0.0;
    int newton_iterations = 0;
};

inline WitnessSolution solve_witness_sdp(const WitnessProblem& prob) {
    if (prob.labels.size() != prob.values.size())
        throw std::invalid_argument("solve_witness_sdp: labels/values size mismatch");
    if (prob.labels.empty()) throw std::invalid_argument("solve_witness_sdp: empty problem");
    const auto& set = observable_set();
    std::vector<const Observable*> obs;
    obs.reserve(prob.labels.size());
    for (const auto& l : prob.labels) obs.push_back(&set.by_label(l));

    const int d = 4;
    const std::vector<int> dims{2, 2};
    const auto basis = hermitian_basis(d);
    const int nc = static_cast<int>(obs.size());
    const int nq = static_cast<int>(basis.size());
    const int n = nc + nq;

    AffineBlock bp, bq;  // P = I/d + sum c O - Q^{T_A}, Q = sum q H
    bp.constant = (1.0 / d) * ComplexMatrix::identity(d);
    bq.constant = ComplexMatrix(d, d);
    bp.coeff.resize(n);
    bq.coeff.resize(n);
    for (int i = 0; i < nc; ++i) bp.coeff[i] = obs[i]->op.mat();
    for (int a = 0; a < nq; ++a) {
        bp.coeff[nc + a] = -1.0 * partial_transpose(basis[a], dims, 0);
        bq.coeff[nc + a] = basis[a];
    }

    std::vector<double> g(n, 0.0);
    for (int i = 0; i < nc; ++i) g[i] = prob.values[i];

    std::vector<double> x0(n, 0.0);
    for (int i = 0; i < d; ++i) x0[nc + i] = 1.0 / (2.0 * d);  // Q = I/(2d)

    SdpOptions opts;
    opts.tol = prob.tol;
    SdpSolver solver({bp, bq}, g);
    const SdpResult res = solver.solve(x0, opts);
    if (!res.converged)
        throw SolverError("witness optimization failed: " + res.message +
                          " (newton=" + std::to_string(res.newton_iterations) +
                          ", grad=" + std::to_string(res.grad_norm) + ")");

    WitnessSolution sol;
    sol.p_part = HermitianMatrix(res.block_values[0], dims);
    sol.q_part = HermitianMatrix(res.block_values[1], dims);
    ComplexMatrix w = (1.0 / d) * ComplexMatrix::identity(d);
    double cnorm2 = 0.0;
    sol.coefficients.resize(nc);
    for (int i = 0; i < nc; ++i) {
        sol.coefficients[i] = res.x[i];
        cnorm2 += res.x[i] * res.x[i];
        w = w + res.x[i] * obs[i]->op.mat();
    }
    sol.witness = HermitianMatrix(w, dims);
    sol.objective = 1.0 / d + res.objective;
    sol.duality_gap = res.gap;
    sol.newton_iterations = res.newton_iterations;
    sol.equality_residual = frobenius_norm(
        w - res.block_values[0] - partial_transpose(res.block_values[1], dims, 0));
    sol.min_eig_p = min_eigenvalue(sol.p_part);
    sol.min_eig_q = min_eigenvalue(sol.q_part);
    const ComplexMatrix& y = res.dual_blocks[0];
    for (int i = 0; i < nc; ++i) {
        double yo = 0.0;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                yo += y(r, c).real() * obs[i]->op.mat()(c, r).real() -
                      y(r, c).imag() * obs[i]->op.mat()(c, r).imag();
        sol.dual_residual = std::max(sol.dual_residual, std::abs(yo - prob.values[i]));
    }
    sol.eps_detect = std::max(1e-6, 2.0 * prob.sigma * std::sqrt(cnorm2));
    sol.detected = sol.objective < -sol.eps_detect;
    return sol;
}

// Witness W = c I - rho for a pure entangled rho, where c is the largest
// squared Schmidt coefficient. tr(W sigma) >= 0 on separable sigma and
// tr(W rho) = c - 1 < 0.
struct AnalyticWitness {
    HermitianMatrix witness;
    double schmidt_bound = 0.0;  // largest squared Schmidt coefficient
};

inline AnalyticWitness analytic_witness(const DensityMatrix& rho) {
    const auto dims = rho.dims();
    if (dims.size() != 2) throw std::invalid_argument("analytic_witness: need a bipartite state");
    const auto spec = eig(rho.op());
    const int d = rho.side();
    if (spec.eigenvalues[d - 1] < 1.0 - 1e-8)
        throw std::invalid_argument("analytic_witness: state is not pure");
    const int da = dims[0], db = dims[1];
    ComplexMatrix m(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) m(i, j) = spec.eigenvectors(i * db + j, d - 1);
    const HermitianMatrix gram(adjoint(m) * m, {db});
    const auto sv = eig(gram);
    const double cmax = sv.eigenvalues[db - 1];
    if (cmax >= 1.0 - 1e-8)
        throw std::invalid_argument("analytic_witness: state is separable");
    AnalyticWitness out{
        HermitianMatrix(cmax * ComplexMatrix::identity(d) - rho.mat(), dims), cmax};
    return out;
}

// Sequential detection: measure an initial anchor triple, extend the
// observable list one entry at a time, and stop at the first witness whose
// optimum clears the noise margin.
struct AdaptiveResult {
    bool detected = false;
    int measurements_used = 0;
    std::vector<WitnessSolution> steps;  // one per attempted subset size
    MeasurementRecord record;            // values for every label consumed
};

inline AdaptiveResult adaptive_detect(const DensityMatrix& rho,
                                      const std::vector<std::string>& order, double sigma,
                                      uint64_t seed, double tol = 1e-7) {
    static const std::vector<std::string> anchors{"O1", "O2", "O3"};
    if (order.size() < 3) throw std::invalid_argument("adaptive_detect: need at least O1 O2 O3");
    for (int i = 0; i < 3; ++i)
        if (order[i] != anchors[i])
            throw std::invalid_argument("adaptive_detect: order must start with O1 O2 O3");

    const MeasurementRecord full = sigma > 0.0 ? measure_noisy(rho, order, sigma, seed)
                                               : measure_exact(rho, order);
    AdaptiveResult out;
    out.record = full;
    for (size_t k = 3; k <= order.size(); ++k) {
        WitnessProblem prob;
        prob.labels.assign(full.labels.begin(), full.labels.begin() + k);
        prob.values.assign(full.values.begin(), full.values.begin() + k);
        prob.sigma = sigma;
        prob.tol = tol;
        out.steps.push_back(solve_witness_sdp(prob));
        out.measurements_used = static_cast<int>(k);
        if (out.steps.back().detected) {
            out.detected = true;
            break;
        }
    }
    return out;
}

}  // namespace entwit
