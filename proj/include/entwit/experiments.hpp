#pragma once

// End-to-end study drivers with deterministic text output: the labeled-state
// detection table, adaptive detection reports, tomography summaries, and the
// restricted-witness detection-fraction study. All floating-point formatting
// goes through snprintf with pinned precision so reruns with the same seed
// produce byte-identical files regardless of thread count.

#include <cstdio>
#include <future>
#include <numeric>
#include <sstream>

#include "hybrid23.hpp"
#include "matrix_json.hpp"
#include "tomography.hpp"
#include "witness.hpp"

namespace entwit {

inline std::string fmt_fixed(double x, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, x);
    std::string s(buf);
    bool zero = true;
    for (char ch : s)
        if (ch >= '1' && ch <= '9') {
            zero = false;
            break;
        }
    if (zero && !s.empty() && s[0] == '-') s.erase(0, 1);
    return s;
}

// Run fn(0..count-1) on up to `jobs` concurrent threads, returning results
// in index order so the assembled output never depends on scheduling.
template <typename Fn>
std::vector<std::string> ordered_parallel(int count, int jobs, Fn fn) {
    jobs = std::max(1, jobs);
    std::vector<std::string> rows(static_cast<size_t>(count));
    int next = 0;
    while (next < count) {
        const int batch = std::min(jobs, count - next);
        std::vector<std::future<std::string>> futs;
        futs.reserve(static_cast<size_t>(batch));
        for (int b = 0; b < batch; ++b)
            futs.push_back(std::async(std::launch::async, fn, next + b));
        for (int b = 0; b < batch; ++b) rows[static_cast<size_t>(next + b)] = futs[b].get();
        next += batch;
    }
    return rows;
}

inline DensityMatrix state_from_label(const std::string& text) {
    const StateLabel l = parse_state_label(text);
    if (l.hybrid) return TwoParamState{l.hybrid->first, l.hybrid->second}.assemble();
    return two_qubit_state_from_label(l);
}

inline std::string run_state(const std::string& label) {
    return state_to_json(state_from_label(label)).dump(2) + "\n";
}

inline std::string run_measure(const std::string& label, const std::vector<std::string>& obs,
                               double sigma, std::uint64_t seed) {
    const DensityMatrix rho = state_from_label(label);
    if (rho.side() != 4)
        throw std::invalid_argument("run_measure: observables are defined for two qubits");
    return record_to_json(measure_noisy(rho, obs, sigma, seed)).dump(2) + "\n";
}

inline std::string run_detect(const std::string& label, double sigma, std::uint64_t seed,
                              const std::vector<std::string>& order, double tol = 1e-7) {
    const DensityMatrix rho = state_from_label(label);
    if (rho.side() != 4)
        throw std::invalid_argument("run_detect: adaptive detection needs a two-qubit state");
    const AdaptiveResult res = adaptive_detect(rho, order, sigma, seed, tol);
    const WitnessSolution& last = res.steps.back();

    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : res.steps)
        steps.push_back({{"measurements", s.coefficients.size()},
                         {"objective", s.objective},
                         {"eps_detect", s.eps_detect},
                         {"detected", s.detected}});
    nlohmann::json coeffs;
    for (size_t i = 0; i < last.coefficients.size(); ++i)
        coeffs[res.record.labels[i]] = last.coefficients[i];
    nlohmann::json j{{"label", label},
                     {"sigma", sigma},
                     {"seed", seed},
                     {"detected", res.detected},
                     {"measurements_used", res.measurements_used},
                     {"objective", last.objective},
                     {"eps_detect", last.eps_detect},
                     {"negativity_estimate", -last.objective},
                     {"duality_gap", last.duality_gap},
                     {"coefficients", std::move(coeffs)},
                     {"steps", std::move(steps)}};
    return j.dump(2) + "\n";
}

struct TableOptions {
    double sigma = 0.0;
    std::uint64_t seed = 1;
    int trials = 1;
    int jobs = 1;
    Convention convention = Convention::Table;
    double tol = 1e-7;
};

inline const std::vector<std::string>& table_labels() {
    static const std::vector<std::string> labels = [] {
        std::vector<std::string> l{"B1", "B2", "B3", "B4", "S1", "S2"};
        for (int n = 1; n <= 14; ++n) l.push_back("E" + std::to_string(n));
        return l;
    }();
    return labels;
}

// One row per labeled state, mirroring the two-track protocol: detection by
// the anchor-triple witness judged against the noise margin, and a separate
// full-set reconstruction whose negativity is the reported estimate. Columns:
// closed-form negativity, mean reconstructed negativity, whether a majority
// of trials detected the state, mean measurements consumed, detection rate.
inline std::string run_table2(const TableOptions& opts = {}) {
    const auto& labels = table_labels();
    const auto& full_order = observable_set().default_order();
    const std::vector<std::string> anchor_order{"O1", "O2", "O3"};
    auto row = [&](int idx) {
        const std::string& label = labels[static_cast<size_t>(idx)];
        const DensityMatrix rho = state_from_label(label);
        const double theory = negativity(rho, opts.convention);
        double est = 0.0, meas = 0.0;
        int hits = 0;
        for (int t = 0; t < opts.trials; ++t) {
            const std::uint64_t s =
                derive_seed(opts.seed, static_cast<std::uint64_t>(idx) * 1000003u +
                                           static_cast<std::uint64_t>(t));
            const AdaptiveResult r = adaptive_detect(rho, anchor_order, opts.sigma, s, opts.tol);
            const Tomogram tomo =
                reconstruct(measure_noisy(rho, full_order, opts.sigma, s));
            est += negativity_from_tomogram(tomo, opts.convention);
            meas += r.measurements_used;
            hits += r.detected ? 1 : 0;
        }
        est /= opts.trials;
        meas /= opts.trials;
        const double rate = static_cast<double>(hits) / opts.trials;
        std::string out = label;
        out += ',' + fmt_fixed(theory, 3);
        out += ',' + fmt_fixed(est, 3);
        out += ',';
        out += (rate >= 0.5 ? '1' : '0');
        out += ',' + fmt_fixed(meas, 2);
        out += ',' + fmt_fixed(rate, 3);
        out += '\n';
        return out;
    };
    std::string csv = "state,negativity,estimate,detected,measurements,rate\n";
    for (auto& r :
         ordered_parallel(static_cast<int>(labels.size()), opts.jobs, row))
        csv += r;
    return csv;
}

struct TomoOutput {
    std::string values_csv;
    std::string summary_json;
};

inline TomoOutput run_tomo(const std::string& label, double sigma, std::uint64_t seed,
                           Convention conv = Convention::Table) {
    const DensityMatrix rho = state_from_label(label);
    if (rho.side() != 4)
        throw std::invalid_argument("run_tomo: reconstruction needs a two-qubit state");
    const MeasurementRecord rec =
        measure_noisy(rho, observable_set().default_order(), sigma, seed);
    const Tomogram t = reconstruct(rec, rho);

    TomoOutput out;
    out.values_csv = "label,value\n";
    for (size_t i = 0; i < rec.labels.size(); ++i)
        out.values_csv += rec.labels[i] + ',' + fmt_fixed(rec.values[i], 6) + '\n';

    double max_imag = 0.0;
    for (const auto& v : t.repaired.mat().data())
        max_imag = std::max(max_imag, std::abs(v.imag()));
    nlohmann::json j{{"label", label},
                     {"sigma", sigma},
                     {"seed", seed},
                     {"fidelity", *t.fidelity_to_target},
                     {"negativity", negativity_from_tomogram(t, conv)},
                     {"min_raw_eigenvalue", t.min_raw_eigenvalue},
                     {"repair_distance", t.repair_distance},
                     {"max_imag", max_imag}};
    out.summary_json = j.dump(2) + "\n";
    return out;
}

struct Fig4Output {
    std::string fractions_csv;
    std::vector<std::pair<int, std::string>> surfaces;  // k -> alpha,gamma,trace grid
};

inline Fig4Output run_fig4(const FractionOptions& opts = {}) {
    const std::vector<FractionPoint> curve = fraction_curve(opts);
    Fig4Output out;
    out.fractions_csv = "k,subset,normalization,valid,fraction,worst\n";
    for (const auto& pt : curve) {
        for (const auto& c : pt.candidates) {
            std::string subset;
            for (const auto& s : c.support) {
                if (!subset.empty()) subset += '+';
                subset += s;
            }
            const bool usable = c.class_valid && c.detecting;
            const bool worst = usable && c.normalization == pt.worst.normalization &&
                               c.support == pt.worst.support;
            out.fractions_csv += std::to_string(pt.k) + ',' + subset + ',' + c.normalization +
                                 ',' + (usable ? '1' : '0') + ',' + fmt_fixed(c.fraction, 4) +
                                 ',' + (worst ? '1' : '0') + '\n';
        }
        std::string surf = "alpha,gamma,trace\n";
        const int n = 101;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a = 0.5 * i / (n - 1);
                const double g = static_cast<double>(j) / (n - 1);
                surf += fmt_fixed(a, 4) + ',' + fmt_fixed(g, 4) + ',' +
                        fmt_fixed(formal_trace(pt.worst.op, a, g), 6) + '\n';
            }
        out.surfaces.emplace_back(pt.k, std::move(surf));
    }
    return out;
}

}  // namespace entwit
