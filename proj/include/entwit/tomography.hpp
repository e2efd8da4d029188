#pragma once

// Linear-inversion state reconstruction from the full observable set.
//
// The fifteen product observables plus the identity form an orthogonal
// operator basis with tr(O_i^2) = 1, so the raw estimate is
//
//   rho_raw = I/4 + sum_i m_i O_i.
//
// With noisy values rho_raw can dip below zero; the repaired estimate is the
// Frobenius projection onto the density matrices, computed by projecting the
// spectrum onto the probability simplex (shift by a uniform constant, then
// clip), which keeps the repair from ever moving away from the true state.

#include <optional>

#include "observables.hpp"
#include "states.hpp"

namespace entwit {

struct Tomogram {
    HermitianMatrix raw;
    DensityMatrix repaired;
    double min_raw_eigenvalue = 0.0;
    double repair_distance = 0.0;  // ||raw - repaired||_F
    std::optional<double> fidelity_to_target;
};

inline Tomogram reconstruct(const MeasurementRecord& record,
                            const std::optional<DensityMatrix>& target = std::nullopt) {
    const auto& set = observable_set();
    if (static_cast<int>(record.labels.size()) != set.size())
        throw std::invalid_argument("reconstruct: need values for every observable");
    std::vector<bool> seen(set.size(), false);
    ComplexMatrix m = 0.25 * ComplexMatrix::identity(4);
    for (size_t i = 0; i < record.labels.size(); ++i) {
        const Observable& o = set.by_label(record.labels[i]);
        int idx = -1;
        for (int k = 0; k < set.size(); ++k)
            if (set.at(k).label == o.label) idx = k;
        if (seen[idx]) throw std::invalid_argument("reconstruct: duplicate label " + o.label);
        seen[idx] = true;
        m = m + record.values[i] * o.op.mat();
    }

    Tomogram t;
    t.raw = HermitianMatrix(m, {2, 2});
    const Spectrum spec = eig(t.raw);
    t.min_raw_eigenvalue = spec.eigenvalues.front();

    double acc = 0.0, theta = 0.0;
    for (int k = 3; k >= 0; --k) {
        acc += spec.eigenvalues[k];
        const double th = (acc - 1.0) / (4 - k);
        if (th < spec.eigenvalues[k]) theta = th;
    }
    ComplexMatrix fixed(4, 4);
    for (int k = 0; k < 4; ++k) {
        const double w = std::max(spec.eigenvalues[k] - theta, 0.0);
        if (w == 0.0) continue;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                fixed(i, j) += w * spec.eigenvectors(i, k) * std::conj(spec.eigenvectors(j, k));
    }
    t.repaired = DensityMatrix(fixed, {2, 2});
    t.repair_distance = frobenius_norm(m - fixed);
    if (target) t.fidelity_to_target = fidelity(t.repaired, *target);
    return t;
}

inline double negativity_from_tomogram(const Tomogram& t, Convention conv) {
    return negativity(t.repaired, conv);
}

}  // namespace entwit
