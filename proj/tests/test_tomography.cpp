#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <entwit/experiments.hpp>
#include <entwit/tomography.hpp>

using namespace entwit;

TEST_CASE("noiseless reconstruction is exact for every labeled state") {
    const auto order = observable_set().default_order();
    for (const auto& label : table_labels()) {
        const DensityMatrix rho = state_from_label(label);
        const Tomogram t = reconstruct(measure_exact(rho, order), rho);
        REQUIRE(t.fidelity_to_target.has_value());
        CHECK(std::abs(*t.fidelity_to_target - 1.0) < 1e-9);
        CHECK(frobenius_norm(t.raw.mat() - rho.mat()) < 1e-12);
        CHECK(t.repair_distance < 1e-10);
        CHECK(t.min_raw_eigenvalue > -1e-12);
    }
}

TEST_CASE("the flat record reconstructs the maximally mixed state") {
    const auto order = observable_set().default_order();
    const MeasurementRecord flat(order, std::vector<double>(15, 0.0), 0.0, 0);
    const Tomogram t = reconstruct(flat);
    CHECK(frobenius_norm(t.raw.mat() - 0.25 * ComplexMatrix::identity(4)) < 1e-15);
    CHECK(frobenius_norm(t.repaired.mat() - 0.25 * ComplexMatrix::identity(4)) < 1e-12);
    CHECK_FALSE(t.fidelity_to_target.has_value());
}

TEST_CASE("noisy reconstruction is deterministic in the seed") {
    const DensityMatrix rho = bell(BellState::PhiMinus);
    const auto order = observable_set().default_order();
    const Tomogram a = reconstruct(measure_noisy(rho, order, 0.03, 17));
    const Tomogram b = reconstruct(measure_noisy(rho, order, 0.03, 17));
    CHECK(frobenius_norm(a.raw.mat() - b.raw.mat()) == 0.0);
    CHECK(frobenius_norm(a.repaired.mat() - b.repaired.mat()) == 0.0);
    CHECK(a.min_raw_eigenvalue == b.min_raw_eigenvalue);
}

TEST_CASE("repair is idempotent and never moves away from the truth") {
    const DensityMatrix rho = bell(BellState::PhiMinus);
    const auto order = observable_set().default_order();
    for (int seed = 1; seed <= 50; ++seed) {
        const Tomogram t = reconstruct(measure_noisy(rho, order, 0.03, seed));
        const double d_raw = frobenius_norm(t.raw.mat() - rho.mat());
        const double d_rep = frobenius_norm(t.repaired.mat() - rho.mat());
        CHECK(d_rep <= d_raw + 1e-12);

        const Tomogram again = reconstruct(measure_exact(t.repaired, order));
        CHECK(frobenius_norm(again.repaired.mat() - t.repaired.mat()) < 1e-10);
    }
}

TEST_CASE("reconstruction validates the record") {
    const DensityMatrix rho = bell(BellState::PhiPlus);
    const auto order = observable_set().default_order();

    std::vector<std::string> short_order(order.begin(), order.end() - 1);
    CHECK_THROWS_AS(reconstruct(measure_exact(rho, short_order)), std::invalid_argument);

    std::vector<std::string> doubled = short_order;
    doubled.push_back("O1");
    CHECK_THROWS_AS(reconstruct(measure_exact(rho, doubled)), std::invalid_argument);
}

TEST_CASE("a crafted indefinite estimate repairs to the nearest state") {
    const auto order = observable_set().default_order();
    std::vector<double> values(15, 0.0);
    values[0] = 0.65;
    values[1] = -0.65;
    values[2] = 0.65;
    const MeasurementRecord rec(order, values, 0.05, 0);
    const Tomogram t = reconstruct(rec, bell(BellState::PhiPlus));
    CHECK(std::abs(t.min_raw_eigenvalue + 0.075) < 1e-12);
    CHECK(std::abs(*t.fidelity_to_target - 1.0) < 1e-9);
    CHECK(std::abs(t.repair_distance - std::sqrt(0.0675)) < 1e-9);
    CHECK(frobenius_norm(t.repaired.mat() - bell(BellState::PhiPlus).mat()) < 1e-9);
}

TEST_CASE("reconstructed negativity tracks the known values") {
    const auto order = observable_set().default_order();
    const Tomogram e5 = reconstruct(measure_exact(entangled_family(5), order));
    CHECK(std::abs(negativity_from_tomogram(e5, Convention::Table) - 0.25) < 1e-9);

    const Tomogram s1 = reconstruct(measure_exact(separable_examples()[0], order));
    CHECK(negativity_from_tomogram(s1, Convention::Table) < 1e-9);

    const DensityMatrix b1 = bell(BellState::PhiMinus);
    double mean = 0.0;
    for (int seed = 1; seed <= 100; ++seed) {
        const Tomogram t = reconstruct(measure_noisy(b1, order, 0.03, derive_seed(400, seed)));
        mean += negativity_from_tomogram(t, Convention::Table);
    }
    mean /= 100.0;
    CHECK(std::abs(mean - 0.5) < 0.05);
    CHECK(std::abs(mean - 0.48) < 0.05);
}
