#pragma once

// Small-scale semidefinite programming by feasible-start path following.
//
// Problem form: minimize g.x subject to B_k(x) = C_k + sum_i x_i A_{k,i}
// Hermitian positive semidefinite for each block k, from a strictly feasible
// start. A log-det barrier is applied to every block; each centering is
// solved by damped Newton steps, and the barrier parameter grows
// geometrically until the certified duality gap falls below tolerance. A
// centering may be accepted with a small residual Newton decrement lambda
// when rounding stops further progress; the reported gap carries that slack
// as (nu + lambda*sqrt(nu))/t, nu = total block dimension. Dual matrices
// Y_k = B_k(x)^{-1}/t are returned so callers can verify their own
// certificates.

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "hermitian.hpp"

namespace entwit {

struct AffineBlock {
    ComplexMatrix constant;
    std::vector<ComplexMatrix> coeff;  // one matrix per variable, zero matrices allowed
};

struct SdpOptions {
    double tol = 1e-7;       // duality-gap target
    int iteration_cap = 200; // total Newton iterations
    double mu = 10.0;        // barrier growth factor
    // stop as soon as the objective is certified below this value
    std::optional<double> stop_when_objective_below;
};

struct SdpResult {
    std::vector<double> x;
    double objective = 0.0;
    double gap = 0.0;  // (nu + lambda*sqrt(nu))/t at the final centering
    int newton_iterations = 0;
    bool converged = false;
    std::string message;
    std::vector<ComplexMatrix> block_values;
    std::vector<ComplexMatrix> dual_blocks;  // B_k^{-1}/t
    double grad_norm = 0.0;                  // centering residual at exit
    double decrement = 0.0;                  // Newton decrement lambda at exit
};

class SdpSolver {
public:
    SdpSolver(std::vector<AffineBlock> blocks, std::vector<double> objective)
        : blocks_(std::move(blocks)), g_(std::move(objective)) {
        nvar_ = static_cast<int>(g_.size());
        nu_ = 0;
        for (const auto& b : blocks_) {
            if (static_cast<int>(b.coeff.size()) != nvar_)
                throw std::invalid_argument("SdpSolver: coefficient count mismatch");
            nu_ += b.constant.rows();
        }
    }

    SdpResult solve(std::vector<double> x0, const SdpOptions& opts = {}) const {
        SdpResult res;
        res.x = std::move(x0);
        if (static_cast<int>(res.x.size()) != nvar_)
            throw std::invalid_argument("SdpSolver: start size mismatch");
        std::vector<ComplexMatrix> vals, chols;
        if (!factorize(res.x, vals, chols)) {
            res.message = "start point not strictly feasible";
            return res;
        }

        double t = 1.0;
        while (true) {
            if (!center(res, t, vals, chols, opts)) return res;
            res.gap = (nu_ + res.decrement * std::sqrt(static_cast<double>(nu_))) / t;
            res.objective = dot(g_, res.x);
            if (opts.stop_when_objective_below &&
                res.objective + res.gap < *opts.stop_when_objective_below) {
                finish(res, t, vals, chols, "objective certified below early-exit level");
                return res;
            }
            if (res.gap <= opts.tol) {
                finish(res, t, vals, chols, "converged");
                res.converged = true;
                return res;
            }
            t *= opts.mu;
        }
    }

    int nu() const { return nu_; }

private:
    static double dot(const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }

    bool factorize(const std::vector<double>& x, std::vector<ComplexMatrix>& vals,
                   std::vector<ComplexMatrix>& chols) const {
        vals.clear();
        chols.clear();
        for (const auto& b : blocks_) {
            ComplexMatrix v = b.constant;
            for (int i = 0; i < nvar_; ++i) {
                if (b.coeff[i].rows() == 0 || x[i] == 0.0) continue;
                for (size_t e = 0; e < v.data().size(); ++e)
                    v.data()[e] += x[i] * b.coeff[i].data()[e];
            }
            ComplexMatrix l;
            if (!cholesky(v, l)) return false;
            vals.push_back(std::move(v));
            chols.push_back(std::move(l));
        }
        return true;
    }

    double barrier(const std::vector<ComplexMatrix>& chols) const {
        double s = 0.0;
        for (const auto& l : chols)
            for (int i = 0; i < l.rows(); ++i) s -= 2.0 * std::log(l(i, i).real());
        return s;
    }

    // One centering: damped Newton on t*g.x - sum log det B_k(x).
    bool center(SdpResult& res, double t, std::vector<ComplexMatrix>& vals,
                std::vector<ComplexMatrix>& chols, const SdpOptions& opts) const {
        const int n = nvar_;
        double prev_dec2 = std::numeric_limits<double>::infinity();
        int stalled = 0;
        for (;;) {
            if (res.newton_iterations >= opts.iteration_cap) {
                res.message = "iteration cap reached during centering";
                return false;
            }
            // gradient and Hessian from M_{k,i} = B_k^{-1} A_{k,i}
            std::vector<double> grad(n), hess(static_cast<size_t>(n) * n, 0.0);
            for (int i = 0; i < n; ++i) grad[i] = t * g_[i];
            for (size_t k = 0; k < blocks_.size(); ++k) {
                const ComplexMatrix binv =
                    backward_solve(chols[k], forward_solve(chols[k], ComplexMatrix::identity(
                                                                         vals[k].rows())));
                std::vector<ComplexMatrix> m(n);
                for (int i = 0; i < n; ++i) {
                    if (blocks_[k].coeff[i].rows() == 0) continue;
                    m[i] = binv * blocks_[k].coeff[i];
                    double tr = 0.0;
                    for (int r = 0; r < m[i].rows(); ++r) tr += m[i](r, r).real();
                    grad[i] -= tr;
                }
                for (int i = 0; i < n; ++i) {
                    if (m[i].rows() == 0) continue;
                    for (int j = i; j < n; ++j) {
                        if (m[j].rows() == 0) continue;
                        double tr = 0.0;
                        for (int r = 0; r < m[i].rows(); ++r)
                            for (int c = 0; c < m[i].cols(); ++c)
                                tr += m[i](r, c).real() * m[j](c, r).real() -
                                      m[i](r, c).imag() * m[j](c, r).imag();
                        hess[static_cast<size_t>(i) * n + j] += tr;
                        if (i != j) hess[static_cast<size_t>(j) * n + i] += tr;
                    }
                }
            }
            double gnorm = 0.0;
            for (double v : grad) gnorm += v * v;
            res.grad_norm = std::sqrt(gnorm);

            std::vector<double> step;
            try {
                std::vector<double> rhs(n);
                for (int i = 0; i < n; ++i) rhs[i] = -grad[i];
                step = spd_solve(hess, rhs);
            } catch (const std::exception& e) {
                res.message = std::string("Newton system: ") + e.what();
                return false;
            }
            const double decrement2 = -dot(grad, step);  // lambda^2
            // Large t pushes the attainable decrement up to a rounding floor,
            // so a repeated failure to shrink it is accepted once lambda is
            // small; the residual slack stays in the reported gap.
            stalled = decrement2 > 0.5 * prev_dec2 ? stalled + 1 : 0;
            prev_dec2 = decrement2;
            if (decrement2 <= 1e-11 || (decrement2 <= 1e-2 && stalled >= 3)) {
                res.decrement = std::sqrt(std::max(decrement2, 0.0));
                return true;
            }

            ++res.newton_iterations;
            const double f0 = t * dot(g_, res.x) + barrier(chols);
            double alpha = 1.0;
            std::vector<double> xt(n);
            std::vector<ComplexMatrix> vt, ct;
            for (;; alpha *= 0.5) {
                if (alpha < 1e-13) {
                    res.message = "line search stalled";
                    return false;
                }
                for (int i = 0; i < n; ++i) xt[i] = res.x[i] + alpha * step[i];
                if (!factorize(xt, vt, ct)) continue;
                const double ft = t * dot(g_, xt) + barrier(ct);
                if (ft <= f0 - 0.25 * alpha * decrement2) break;
            }
            res.x = xt;
            vals = std::move(vt);
            chols = std::move(ct);
        }
    }

    void finish(SdpResult& res, double t, const std::vector<ComplexMatrix>& vals,
                const std::vector<ComplexMatrix>& chols, const std::string& msg) const {
        res.message = msg;
        res.objective = dot(g_, res.x);
        res.gap = (nu_ + res.decrement * std::sqrt(static_cast<double>(nu_))) / t;
        res.block_values = vals;
        res.dual_blocks.clear();
        for (size_t k = 0; k < blocks_.size(); ++k) {
            ComplexMatrix binv = backward_solve(
                chols[k], forward_solve(chols[k], ComplexMatrix::identity(vals[k].rows())));
            res.dual_blocks.push_back((1.0 / t) * binv);
        }
    }

    std::vector<AffineBlock> blocks_;
    std::vector<double> g_;
    int nvar_ = 0;
    int nu_ = 0;
};

// Orthonormal real basis of d x d Hermitian matrices under tr(AB):
// diagonal units, then symmetric and antisymmetric off-diagonal pairs.
inline std::vector<ComplexMatrix> hermitian_basis(int d) {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        ComplexMatrix m(d, d);
        m(i, i) = 1.0;
        out.push_back(std::move(m));
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            ComplexMatrix s(d, d);
            s(i, j) = r;
            s(j, i) = r;
            out.push_back(std::move(s));
            ComplexMatrix a(d, d);
            a(i, j) = cplx(0, -r);
            a(j, i) = cplx(0, r);
            out.push_back(std::move(a));
        }
    return out;
}

struct DecomposabilityReport {
    bool decomposable = false;
    double shift = 0.0;  // optimal eigenvalue shift s*; <= 0 within tolerance means yes
    double gap = 0.0;
    bool reliable = true;
};

// Feasibility of W = P + Q^{T_sub} with P, Q >= 0, decided through the
// phase-I program: minimize s with W - Q^{T_sub} + sI >= 0, Q + sI >= 0.
// W is decomposable exactly when the optimal s is <= 0; we accept s* below
// a small positive tolerance to admit boundary witnesses (P or Q singular).
inline DecomposabilityReport decomposability_check(const HermitianMatrix& w, int sub = 0,
                                                   double tol = 1e-7) {
    const int d = w.side();
    const auto basis = hermitian_basis(d);
    const int nq = static_cast<int>(basis.size());
    const int n = nq + 1;  // q..., s

    AffineBlock bp, bq;
    bp.constant = w.mat();
    bq.constant = ComplexMatrix(d, d);
    bp.coeff.resize(n);
    bq.coeff.resize(n);
    for (int a = 0; a < nq; ++a) {
        bp.coeff[a] = -1.0 * partial_transpose(basis[a], w.dims(), sub);
        bq.coeff[a] = basis[a];
    }
    bp.coeff[nq] = ComplexMatrix::identity(d);
    bq.coeff[nq] = ComplexMatrix::identity(d);

    std::vector<double> g(n, 0.0);
    g[nq] = 1.0;

    // start: Q = eps I, s = ||W|| + 1 clears both blocks
    std::vector<double> x0(n, 0.0);
    for (int i = 0; i < d; ++i) x0[i] = 1e-3;
    x0[nq] = frobenius_norm(w.mat()) + 1.0;

    SdpOptions opts;
    opts.tol = std::min(tol, 1e-8);
    opts.iteration_cap = 400;
    opts.stop_when_objective_below = -10.0 * tol;
    SdpSolver solver({bp, bq}, g);
    const SdpResult res = solver.solve(x0, opts);

    DecomposabilityReport rep;
    rep.shift = res.x.empty() ? 1e300 : res.x.back();
    rep.gap = res.gap;
    if (!res.converged && !res.message.starts_with("objective certified")) {
        rep.reliable = false;
        rep.decomposable = false;
        return rep;
    }
    // upper bound on s* is the current objective; lower bound subtracts the gap
    rep.decomposable = rep.shift <= tol;
    if (!rep.decomposable && rep.shift - rep.gap <= tol) rep.reliable = false;
    return rep;
}

}  // namespace entwit
