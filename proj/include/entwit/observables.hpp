#pragma once

// The 15-observable local measurement set for two qubits. Each observable is
// the pullback U^dagger (I_kz) U of a z-magnetization readout through the
// preparation circuit of the corresponding row; rows 1-3 must come out equal
// to the two-spin correlators 2 I_1x I_2x, 2 I_1y I_2y, 2 I_1z I_2z, which
// pins the rotation sign conventions.

#include <array>
#include <string>

#include "hermitian.hpp"
#include "rng.hpp"
#include "states.hpp"

namespace entwit {

namespace gates {

inline ComplexMatrix pauli(char which) {
    ComplexMatrix m(2, 2);
    switch (which) {
        case 'i': m(0, 0) = 1; m(1, 1) = 1; break;
        case 'x': m(0, 1) = 1; m(1, 0) = 1; break;
        case 'y': m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
        case 'z': m(0, 0) = 1; m(1, 1) = -1; break;
        default: throw std::invalid_argument("pauli: unknown axis");
    }
    return m;
}

// exp(-i angle sigma/2)
inline ComplexMatrix rotation(char axis, double angle) {
    const ComplexMatrix s = pauli(axis);
    const double c = std::cos(angle / 2.0), sn = std::sin(angle / 2.0);
    ComplexMatrix m = ComplexMatrix::identity(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = c * m(i, j) - cplx(0, sn) * s(i, j);
    return m;
}

// axis in {x,y,z}, spin in {1,2}, sign +1 for a pi/2 pulse, -1 for its inverse
inline ComplexMatrix pulse(char axis, int spin, int sign) {
    const ComplexMatrix r = rotation(axis, sign * kPi / 2.0);
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return spin == 1 ? kron(r, id) : kron(id, r);
}

// control = spin 1, target = spin 2
inline ComplexMatrix cnot() {
    ComplexMatrix m(4, 4);
    m(0, 0) = 1; m(1, 1) = 1; m(2, 3) = 1; m(3, 2) = 1;
    return m;
}

}  // namespace gates

// z readout of one spin: I_kz = sigma_z/2 on spin k
inline HermitianMatrix spin_z(int spin) {
    const ComplexMatrix z = 0.5 * gates::pauli('z');
    const ComplexMatrix id = ComplexMatrix::identity(2);
    return HermitianMatrix(spin == 1 ? kron(z, id) : kron(id, z), {2, 2});
}

struct Observable {
    std::string label;      // "O1".."O15"
    HermitianMatrix op;     // the pullback matrix
    ComplexMatrix prep;     // preparation circuit U
    int readout_spin;       // 1 or 2
    double norm;            // tr(op^2)
};

class ObservableSet {
public:
    ObservableSet() { build(); }

    int size() const { return static_cast<int>(items_.size()); }
    const Observable& at(int i) const { return items_.at(i); }

    const Observable& by_label(const std::string& label) const {
        for (const auto& o : items_)
            if (o.label == label) return o;
        throw std::invalid_argument("unknown observable label: '" + label + "'");
    }

    std::vector<std::string> default_order() const {
        std::vector<std::string> out;
        for (const auto& o : items_) out.push_back(o.label);
        return out;
    }

private:
    void build() {
        using namespace gates;
        const ComplexMatrix id4 = ComplexMatrix::identity(4);
        struct Row {
            ComplexMatrix prep;
            int spin;
        };
        const ComplexMatrix cx = cnot();
        const std::array<Row, 15> rows = {{
            {cx * pulse('y', 2, +1) * pulse('y', 1, +1), 2},
            {cx * pulse('x', 2, -1) * pulse('x', 1, -1), 2},
            {cx, 2},
            {cx * pulse('x', 2, -1) * pulse('y', 1, +1), 2},
            {cx * pulse('y', 1, +1), 2},
            {cx * pulse('y', 2, -1) * pulse('x', 1, +1), 2},
            {cx * pulse('x', 1, +1), 2},
            {cx * pulse('y', 2, -1), 2},
            {cx * pulse('x', 2, +1), 2},
            {pulse('y', 1, -1), 1},
            {pulse('x', 1, +1), 1},
            {id4, 1},
            {pulse('y', 2, -1), 2},
            {pulse('x', 2, +1), 2},
            {id4, 2},
        }};
        items_.reserve(15);
        for (int i = 0; i < 15; ++i) {
            const ComplexMatrix m =
                adjoint(rows[i].prep) * spin_z(rows[i].spin).mat() * rows[i].prep;
            HermitianMatrix op(m, {2, 2});
            const double norm = trace_inner(op, op);
            items_.push_back(Observable{"O" + std::to_string(i + 1), std::move(op),
                                        rows[i].prep, rows[i].spin, norm});
        }
        // rows 1-3 must reproduce the two-spin correlators exactly; a mismatch
        // means the pulse sign convention drifted
        const ComplexMatrix anchors[3] = {
            0.5 * kron(pauli('x'), pauli('x')),
            0.5 * kron(pauli('y'), pauli('y')),
            0.5 * kron(pauli('z'), pauli('z')),
        };
        for (int i = 0; i < 3; ++i)
            if (frobenius_norm(items_[i].op.mat() - anchors[i]) > 1e-12)
                throw std::logic_error("ObservableSet: anchor row " + std::to_string(i + 1) +
                                       " does not match its correlator form");
    }

    std::vector<Observable> items_;
};

inline const ObservableSet& observable_set() {
    static const ObservableSet set;
    return set;
}

inline double expect(const DensityMatrix& rho, const Observable& o) {
    return trace_inner(rho.op(), o.op);
}

struct MeasurementRecord {
    std::vector<std::string> labels;
    std::vector<double> values;
    double sigma = 0.0;
    std::uint64_t seed = 0;

    MeasurementRecord() = default;
    MeasurementRecord(std::vector<std::string> l, std::vector<double> v, double s,
                      std::uint64_t sd)
        : labels(std::move(l)), values(std::move(v)), sigma(s), seed(sd) {
        if (labels.size() != values.size())
            throw std::invalid_argument("MeasurementRecord: label/value size mismatch");
        if (sigma < 0.0) throw std::invalid_argument("MeasurementRecord: negative sigma");
        for (double x : values)
            if (!(std::abs(x) <= 0.5 + 5.0 * sigma))
                throw std::invalid_argument("MeasurementRecord: value outside physical band");
    }
};

// Exact expectations plus independent Gaussian noise of width sigma,
// clamped at 5 sigma so records stay inside the physical band.
inline MeasurementRecord measure_noisy(const DensityMatrix& rho,
                                       const std::vector<std::string>& labels, double sigma,
                                       std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("measure_noisy: negative sigma");
    const ObservableSet& set = observable_set();
    Rng rng(seed);
    std::vector<double> values;
    values.reserve(labels.size());
    for (const auto& l : labels) {
        double noise = sigma == 0.0 ? 0.0 : rng.gaussian(sigma);
        noise = std::clamp(noise, -5.0 * sigma, 5.0 * sigma);
        values.push_back(expect(rho, set.by_label(l)) + noise);
    }
    return MeasurementRecord(labels, std::move(values), sigma, seed);
}

inline MeasurementRecord measure_exact(const DensityMatrix& rho,
                                       const std::vector<std::string>& labels) {
    return measure_noisy(rho, labels, 0.0, 0);
}

}  // namespace entwit
