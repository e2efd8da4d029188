#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include <entwit/hybrid23.hpp>
#include <entwit/sdp.hpp>

using namespace entwit;

namespace {

const WitnessCandidate& find_candidate(const std::vector<WitnessCandidate>& list,
                                       const std::vector<std::string>& support,
                                       const std::string& normalization) {
    for (const auto& c : list)
        if (c.support == support && c.normalization == normalization) return c;
    FAIL("candidate not found");
    return list.front();
}

}  // namespace

TEST_CASE("gell-mann matrices are a traceless orthogonal family") {
    const auto& lam = gell_mann();
    REQUIRE(lam.size() == 8);
    for (size_t i = 0; i < lam.size(); ++i) {
        CHECK(std::abs(trace(lam[i])) < 1e-14);
        CHECK(frobenius_norm(lam[i] - adjoint(lam[i])) < 1e-14);
        for (size_t j = 0; j < lam.size(); ++j) {
            const double ip = trace_inner(lam[i], lam[j]);
            CHECK(std::abs(ip - (i == j ? 2.0 : 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("two parameter class states assemble where physical") {
    for (double a = 0.05; a < 0.5; a += 0.1)
        for (double g = 0.05; g < 1.0; g += 0.2) {
            const TwoParamState s{a, g};
            if (s.beta() < 0.0) {
                CHECK_THROWS_AS(s.assemble(), std::invalid_argument);
                continue;
            }
            const DensityMatrix rho = s.assemble();
            CHECK(rho.side() == 6);
            CHECK(std::abs(trace(rho.mat()).real() - 1.0) < 1e-12);
            CHECK(s.entangled() == (negativity(rho, Convention::Table) > 1e-12));
        }
    CHECK_THROWS_AS((TwoParamState{0.3, 0.5}.assemble()), std::invalid_argument);
    CHECK(std::abs(trace(TwoParamState{0.3, 0.5}.formal_matrix()).real() - 1.0) < 1e-14);
}

TEST_CASE("partial transpose spectrum matches the closed form") {
    Rng rng(51);
    for (int rep = 0; rep < 1000; ++rep) {
        const TwoParamState s{0.5 * rng.uniform(), rng.uniform()};
        const std::vector<double> num = pt_spectrum(s);
        const std::array<double, 6> exact = pt_closed_form(s);
        REQUIRE(num.size() == 6);
        for (int i = 0; i < 6; ++i) CHECK(std::abs(num[i] - exact[i]) < 1e-10);
    }
    const std::array<double, 6> spot = pt_closed_form(TwoParamState{0.1, 0.3});
    CHECK(std::abs(spot[3] - 7.0 / 30.0) < 1e-14);
}

TEST_CASE("class negativity agrees with the generic definition") {
    for (const auto& pt : {std::pair<double, double>{0.2, 0.4}, {0.1, 0.45}, {0.05, 0.6}}) {
        const TwoParamState s{pt.first, pt.second};
        if (s.beta() < 0.0) continue;
        const DensityMatrix rho = s.assemble();
        const double table = class_negativity(pt.first, pt.second, Convention::Table);
        CHECK(std::abs(table - negativity(rho, Convention::Table)) < 1e-10);
        const double doubled = class_negativity(pt.first, pt.second, Convention::TraceNorm);
        CHECK(std::abs(doubled - negativity(rho, Convention::TraceNorm)) < 1e-10);
        CHECK(std::abs(table - std::max(0.0, pt.first + pt.second - 0.5)) < 1e-14);
    }
}

TEST_CASE("derived witness from the reference point") {
    const DerivedWitness dw = derive_witness(0.3, 0.5);
    CHECK(std::abs(dw.reference_eigenvalue + 0.3) < 1e-12);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const bool weighted = (i == 0 && j == 0) || (i == 4 && j == 4) ||
                                  (i == 1 && j == 3) || (i == 3 && j == 1);
            CHECK(std::abs(dw.witness(i, j) - (weighted ? 0.5 : 0.0)) < 1e-12);
        }

    for (double a = 0.0; a <= 0.5 + 1e-12; a += 0.1)
        for (double g = 0.0; g <= 1.0 + 1e-12; g += 0.2) {
            const double t = formal_trace(dw.witness, a, g);
            CHECK(std::abs(t - 0.5 * (1.0 - 2.0 * a - 2.0 * g)) < 1e-12);
        }

    const DecomposabilityReport rep = decomposability_check(dw.witness);
    CHECK(rep.decomposable);
    CHECK(rep.reliable);
    CHECK(rep.shift <= 1e-7);

    CHECK_THROWS_AS(derive_witness(0.1, 0.2), std::invalid_argument);
}

TEST_CASE("misplacing the second diagonal weight breaks class validity") {
    ComplexMatrix m(6, 6);
    m(0, 0) = m(5, 5) = 0.5;
    m(1, 3) = m(3, 1) = 0.5;
    const HermitianMatrix variant(m, {2, 3});
    CHECK(std::abs(formal_trace(variant, 0.0, 0.45) + 1.0 / 24.0) < 1e-12);
    CHECK(std::abs(formal_trace(variant, 0.0, 0.5) + 1.0 / 12.0) < 1e-12);

    const HermitianMatrix good = derive_witness(0.3, 0.5).witness;
    CHECK(formal_trace(good, 0.0, 0.45) > 1e-12);

    const double f_good = detection_fraction(good);
    const double f_variant = detection_fraction(variant);
    CHECK(f_good == 1.0);
    CHECK(f_variant < 1.0);
}

TEST_CASE("bloch decomposition of the derived witness") {
    const HermitianMatrix w = derive_witness(0.3, 0.5).witness;
    const BlochCoefficients c = bloch_decompose(w);
    CHECK(std::abs(c.c0 - 1.0) < 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(c.u[i]) < 1e-12);
    for (int j = 0; j < 7; ++j) CHECK(std::abs(c.v[j]) < 1e-12);
    CHECK(std::abs(c.v[7] - 0.5) < 1e-12);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 8; ++j) {
            const double want = (i == j) ? 1.5 : 0.0;
            CHECK(std::abs(c.beta[i][j] - want) < 1e-12);
        }
    CHECK(c.nonzero_count() == 4);
    CHECK(frobenius_norm(bloch_assemble(c).mat() - w.mat()) < 1e-12);
}

TEST_CASE("bloch coefficients round trip and index consistently") {
    Rng rng(52);
    for (int rep = 0; rep < 50; ++rep) {
        ComplexMatrix m(6, 6);
        for (int i = 0; i < 6; ++i) {
            m(i, i) = rng.gaussian();
            for (int j = i + 1; j < 6; ++j) {
                const cplx z{rng.gaussian(), rng.gaussian()};
                m(i, j) = z;
                m(j, i) = std::conj(z);
            }
        }
        const HermitianMatrix h(m, {2, 3});
        const BlochCoefficients c = bloch_decompose(h);
        CHECK(frobenius_norm(bloch_assemble(c).mat() - h.mat()) < 1e-10);

        BlochCoefficients copy = c;
        for (int i = 0; i < BlochCoefficients::kCount; ++i) copy.set_index(i, c.by_index(i));
        CHECK(frobenius_norm(bloch_assemble(copy).mat() - h.mat()) < 1e-10);
    }

    CHECK(BlochCoefficients::label_for_index(0) == "u1");
    CHECK(BlochCoefficients::label_for_index(3) == "v1");
    CHECK(BlochCoefficients::label_for_index(10) == "v8");
    CHECK(BlochCoefficients::label_for_index(11) == "b11");
    CHECK(BlochCoefficients::label_for_index(34) == "b38");
    BlochCoefficients c;
    CHECK_THROWS_AS(c.by_index(-1), std::out_of_range);
    CHECK_THROWS_AS(c.by_index(35), std::out_of_range);
    CHECK_THROWS_AS(c.set_index(35, 1.0), std::out_of_range);
}

TEST_CASE("restricted witnesses reproduce the known coverage fractions") {
    const WitnessCandidate b11 = restricted_witness({"b11"}, "projection");
    CHECK(b11.class_valid);
    CHECK(b11.detecting);
    CHECK(std::abs(b11.fraction - 0.5) < 5e-4);

    const WitnessCandidate b11_tight = restricted_witness({"b11"}, "tight");
    CHECK(std::abs(b11_tight.scale - 2.0) < 1e-12);
    CHECK(std::abs(b11_tight.fraction - 5.0 / 6.0) < 5e-4);

    const WitnessCandidate v8 = restricted_witness({"v8"}, "projection");
    CHECK(v8.class_valid);
    CHECK_FALSE(v8.detecting);

    const WitnessCandidate mix = restricted_witness(std::vector<std::string>{"v8", "b11"}, "projection");
    CHECK(std::abs(mix.fraction - 0.665) < 5e-4);

    const WitnessCandidate pair = restricted_witness(std::vector<std::string>{"b11", "b22"}, "projection");
    CHECK(std::abs(pair.fraction - 5.0 / 6.0) < 5e-4);

    const WitnessCandidate trio = restricted_witness({"b11", "b22", "b33"}, "projection");
    CHECK_FALSE(trio.class_valid);
    CHECK(std::abs(trio.fraction - 0.9257) < 1e-3);

    const WitnessCandidate trio_tight = restricted_witness({"b11", "b22", "b33"}, "tight");
    CHECK(trio_tight.class_valid);
    CHECK(std::abs(trio_tight.scale - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(trio_tight.fraction - 5.0 / 6.0) < 5e-4);

    const WitnessCandidate almost =
        restricted_witness({"v8", "b11", "b22"}, "projection");
    CHECK(std::abs(almost.fraction - 11.0 / 12.0) < 5e-4);

    const WitnessCandidate full =
        restricted_witness({"v8", "b11", "b22", "b33"}, "projection");
    CHECK(full.fraction == 1.0);

    const WitnessCandidate idle = restricted_witness({"u1"}, "projection");
    CHECK_FALSE(idle.detecting);

    CHECK_THROWS_AS(restricted_witness({"w9"}, "projection"), std::invalid_argument);
    CHECK_THROWS_AS(restricted_witness({"b11"}, "loose"), std::invalid_argument);
    CHECK_THROWS_AS(restricted_witness(std::vector<int>{35}, "projection"),
                    std::invalid_argument);

    const WitnessCandidate by_index = restricted_witness(std::vector<int>{11}, "projection");
    CHECK(by_index.support == std::vector<std::string>{"b11"});
    CHECK(std::abs(by_index.fraction - b11.fraction) < 1e-15);
}

TEST_CASE("grid and monte carlo fractions agree") {
    const WitnessCandidate mix = restricted_witness(std::vector<std::string>{"v8", "b11"}, "projection");
    FractionOptions mc;
    mc.monte_carlo = true;
    const double f_mc = detection_fraction(mix.op, mc);
    CHECK(std::abs(f_mc - mix.fraction) < 0.005);

    FractionOptions mc2;
    mc2.monte_carlo = true;
    CHECK(detection_fraction(mix.op, mc2) == f_mc);
}

TEST_CASE("physical domain coverage of the single-coefficient witness") {
    const WitnessCandidate b11 = restricted_witness({"b11"}, "projection");
    FractionOptions phys;
    phys.domain = Domain::Physical;
    const double f = detection_fraction(b11.op, phys);
    CHECK(std::abs(f - 1.0 / 6.0) < 2e-3);
}

TEST_CASE("coverage curve over subset sizes") {
    const std::vector<FractionPoint> curve = fraction_curve();
    REQUIRE(curve.size() == 4);
    const double want[] = {0.5, 2.0 / 3.0, 5.0 / 6.0, 1.0};
    const int counts[] = {8, 12, 8, 2};
    double prev = 0.0;
    for (int k = 0; k < 4; ++k) {
        CHECK(curve[k].k == k + 1);
        CHECK(std::abs(curve[k].fraction - want[k]) < 0.005);
        CHECK(static_cast<int>(curve[k].candidates.size()) == counts[k]);
        CHECK(curve[k].fraction >= prev - 1e-12);
        prev = curve[k].fraction;
        CHECK(curve[k].worst.class_valid);
        CHECK(curve[k].worst.detecting);
    }
    CHECK(curve[3].fraction == 1.0);

    const auto& trio_tight =
        find_candidate(curve[2].candidates, {"b11", "b22", "b33"}, "tight");
    CHECK(trio_tight.decomposable);
    const auto& b11_proj = find_candidate(curve[0].candidates, {"b11"}, "projection");
    CHECK_FALSE(b11_proj.decomposable);
    const auto& v8_proj = find_candidate(curve[0].candidates, {"v8"}, "projection");
    CHECK(v8_proj.decomposable);
}

TEST_CASE("decomposability verdicts carry analytic certificates") {
    const WitnessCandidate b11 = restricted_witness({"b11"}, "projection");
    const DecomposabilityReport rep = decomposability_check(b11.op);
    CHECK_FALSE(rep.decomposable);
    CHECK(std::abs(rep.shift - 1.0 / 24.0) < 1e-3);

    std::vector<cplx> probe{0.5, 0.5, 0.0, -0.5, -0.5, 0.0};
    const DensityMatrix product = pure_state(probe, {2, 3});
    const double t = trace_inner(product.op(), b11.op);
    CHECK(std::abs(t + 1.0 / 12.0) < 1e-12);
}

TEST_CASE("local symmetry leaves class states and the witness invariant") {
    Rng rng(53);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix u = random_unitary(2, rng);
        const ComplexMatrix big = two_three_symmetry(u);
        CHECK(frobenius_norm(adjoint(big) * big - ComplexMatrix::identity(6)) < 1e-12);

        for (const auto& pt : {std::pair<double, double>{0.2, 0.2}, {0.1, 0.45}}) {
            const ComplexMatrix rho = TwoParamState{pt.first, pt.second}.formal_matrix();
            CHECK(frobenius_norm(big * rho * adjoint(big) - rho) < 1e-12);
        }
        const ComplexMatrix w = derive_witness(0.3, 0.5).witness.mat();
        CHECK(frobenius_norm(big * w * adjoint(big) - w) < 1e-12);
    }
    CHECK_THROWS_AS(two_three_symmetry(ComplexMatrix::identity(3)), std::invalid_argument);
}
