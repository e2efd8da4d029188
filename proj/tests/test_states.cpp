#include <catch2/catch_amalgamated.hpp>

#include <array>

#include <entwit/observables.hpp>
#include <entwit/states.hpp>

using namespace entwit;

namespace {

double purity(const DensityMatrix& rho) { return trace_inner(rho.op(), rho.op()); }

double pure_det_bound(const DensityMatrix& rho) {
    const Spectrum s = eig(rho.op());
    const int top = rho.side() - 1;
    std::array<cplx, 4> amp{};
    for (int i = 0; i < 4; ++i) amp[i] = s.eigenvectors(i, top);
    return std::abs(amp[0] * amp[3] - amp[1] * amp[2]);
}

}  // namespace

TEST_CASE("bell states are pure with the expected correlator patterns") {
    const auto& set = observable_set();
    const struct {
        BellState which;
        std::array<double, 3> m;
    } rows[] = {
        {BellState::PhiPlus, {0.5, -0.5, 0.5}},
        {BellState::PhiMinus, {-0.5, 0.5, 0.5}},
        {BellState::PsiPlus, {0.5, 0.5, -0.5}},
        {BellState::PsiMinus, {-0.5, -0.5, -0.5}},
    };
    for (const auto& row : rows) {
        const DensityMatrix rho = bell(row.which);
        CHECK(std::abs(purity(rho) - 1.0) < 1e-12);
        for (int i = 0; i < 3; ++i) {
            const double v = expect(rho, set.at(i));
            CHECK(std::abs(v - row.m[i]) < 1e-12);
        }
    }
}

TEST_CASE("partially entangled family follows the half-sine law") {
    const double table[] = {0.052, 0.104, 0.155, 0.203, 0.250, 0.294, 0.335,
                            0.372, 0.405, 0.433, 0.457, 0.476, 0.489, 0.497};
    for (int n = 1; n <= 14; ++n) {
        const CircuitParams p = circuit_params(n);
        CHECK(p.n == n);
        CHECK(p.theta > 0.0);
        CHECK(p.theta <= kPi / 2.0 + 1e-12);

        const DensityMatrix rho = entangled_family(n);
        const double neg = negativity(rho, Convention::Table);
        CHECK(std::abs(neg - 0.5 * std::sin(n * kPi / 30.0)) < 1e-10);
        CHECK(std::abs(neg - table[n - 1]) < 5e-4);
        CHECK(std::abs(negativity(rho, Convention::TraceNorm) - 2.0 * neg) < 1e-12);
    }
    CHECK_THROWS_AS(circuit_params(0), std::invalid_argument);
    CHECK_THROWS_AS(circuit_params(15), std::invalid_argument);
}

TEST_CASE("separable examples carry no negativity") {
    const auto ex = separable_examples();
    REQUIRE(ex.size() == 2);
    for (const auto& rho : ex) {
        CHECK(std::abs(purity(rho) - 1.0) < 1e-12);
        CHECK(negativity(rho, Convention::Table) < 1e-12);
    }
}

TEST_CASE("negativity of random pure states matches the amplitude determinant") {
    Rng rng(21);
    for (int rep = 0; rep < 10000; ++rep) {
        const DensityMatrix rho = random_pure({2, 2}, rng);
        const double neg = negativity(rho, Convention::Table);
        CHECK(std::abs(neg - pure_det_bound(rho)) < 1e-8);
    }
}

TEST_CASE("random product states have zero negativity") {
    Rng rng(22);
    for (int rep = 0; rep < 10000; ++rep) {
        const DensityMatrix rho = random_product_pure({2, 2}, rng);
        CHECK(negativity(rho, Convention::Table) < 1e-9);
    }
}

TEST_CASE("fidelity behaves like an overlap") {
    Rng rng(23);
    const DensityMatrix a = random_mixed({2, 2}, rng);
    CHECK(std::abs(fidelity(a, a) - 1.0) < 1e-9);

    const DensityMatrix zero = pure_state({1.0, 0.0, 0.0, 0.0}, {2, 2});
    const DensityMatrix three = pure_state({0.0, 0.0, 0.0, 1.0}, {2, 2});
    CHECK(fidelity(zero, three) < 1e-9);

    for (int rep = 0; rep < 50; ++rep) {
        const DensityMatrix psi = random_pure({2, 2}, rng);
        const DensityMatrix phi = random_pure({2, 2}, rng);
        const double overlap = trace_inner(psi.op(), phi.op());
        CHECK(std::abs(fidelity(psi, phi) - overlap) < 1e-9);
        const DensityMatrix m = random_mixed({2, 2}, rng);
        CHECK(std::abs(fidelity(psi, m) - fidelity(m, psi)) < 1e-9);
    }

    CHECK_THROWS_AS(fidelity(a, DensityMatrix(0.5 * ComplexMatrix::identity(2), {2})),
                    std::invalid_argument);
}

TEST_CASE("pseudopure assembly scales deviations linearly") {
    const DensityMatrix base = bell(BellState::PhiMinus);
    PseudopureState pp{base, 0.8};
    const DensityMatrix rho = pp.assemble();
    CHECK(std::abs(negativity(rho, Convention::Table) - 0.35) < 1e-12);

    const HermitianMatrix dev = pp.deviation();
    CHECK(std::abs(dev.trace()) < 1e-14);
    const auto& set = observable_set();
    for (int i = 0; i < set.size(); ++i) {
        const double full = expect(base, set.at(i));
        const double scaled = expect(rho, set.at(i));
        CHECK(std::abs(scaled - 0.8 * full) < 1e-12);
    }

    PseudopureState bad{base, 1.2};
    CHECK_THROWS_AS(bad.assemble(), std::invalid_argument);
    PseudopureState neg{base, -0.1};
    CHECK_THROWS_AS(neg.assemble(), std::invalid_argument);
}

TEST_CASE("state labels parse and reject as documented") {
    const StateLabel b1 = parse_state_label("B1");
    REQUIRE(b1.bell.has_value());
    CHECK(*b1.bell == BellState::PhiMinus);
    CHECK(*parse_state_label("B2").bell == BellState::PhiPlus);
    CHECK(*parse_state_label("B3").bell == BellState::PsiPlus);
    CHECK(*parse_state_label("B4").bell == BellState::PsiMinus);
    CHECK(*parse_state_label("S1").separable_index == 1);
    CHECK(*parse_state_label("S2").separable_index == 2);
    CHECK(*parse_state_label("E1").family_index == 1);
    CHECK(*parse_state_label("E14").family_index == 14);

    const StateLabel h = parse_state_label("H:alpha=0.3,gamma=0.5");
    REQUIRE(h.hybrid.has_value());
    CHECK(h.hybrid->first == 0.3);
    CHECK(h.hybrid->second == 0.5);

    for (const char* bad : {"B0", "B5", "E0", "E15", "S0", "S3", "X1", "", "B", "E1x",
                            "H:alpha=0.3", "H:alpha=oops,gamma=0.1"})
        CHECK_THROWS_AS(parse_state_label(bad), std::invalid_argument);

    CHECK_THROWS_AS(two_qubit_state_from_label(h), std::invalid_argument);
    const DensityMatrix rho = two_qubit_state_from_label(parse_state_label("E5"));
    CHECK(std::abs(negativity(rho, Convention::Table) - 0.25) < 1e-12);
}

TEST_CASE("random generators are seeded and honest") {
    Rng a(77), b(77);
    const DensityMatrix ra = random_mixed({2, 2}, a);
    const DensityMatrix rb = random_mixed({2, 2}, b);
    CHECK(frobenius_norm(ra.mat() - rb.mat()) == 0.0);

    Rng c(78);
    const ComplexMatrix u = random_unitary(4, c);
    CHECK(frobenius_norm(adjoint(u) * u - ComplexMatrix::identity(4)) < 1e-12);

    Rng d(79);
    for (int rep = 0; rep < 20; ++rep) {
        const DensityMatrix m = random_mixed({2, 3}, d);
        CHECK(m.side() == 6);
        CHECK(min_eigenvalue(m.op()) > -1e-12);
    }
}
