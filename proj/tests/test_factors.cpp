#include "opcarb/factors.hpp"

#include "opcarb/errors.hpp"
#include "testing_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace opcarb;
using namespace opcarb::testing;

namespace {

MacroRecord sample_macro(const std::string& region = "R", int year = 2000) {
    MacroRecord m;
    m.region = region;
    m.year = year;
    m.population = 100.0;
    m.households = 40.0;
    m.gdp = 2000.0;
    m.service_gdp = 1000.0;
    m.hfc = 900.0;
    m.floor_space = 500.0;
    return m;
}

} // namespace

TEST_CASE("derive_factors computes the residential ratios") {
    const auto macro = sample_macro();
    const auto enduses = make_enduses("R", 2000, Sector::Residential,
                                      {100, 50, 80, 30, 20, 120}, //
                                      {0.1, 0.05, 0.08, 0.12, 0.2, 0.06});
    const auto fv = derive_factors(macro, enduses);

    CHECK(fv.common[0] == doctest::Approx(2.5).epsilon(1e-15)); // P/H = 100/40
    CHECK(fv.common[1] == doctest::Approx(20.0).epsilon(1e-15)); // GDP/P
    CHECK(fv.common[2] == doctest::Approx(0.45).epsilon(1e-15)); // HFC/GDP
    const double total_energy = 100 + 50 + 80 + 30 + 20 + 120;
    CHECK(fv.common[3] == doctest::Approx(total_energy / 900.0).epsilon(1e-15));

    double share_sum = 0.0;
    for (double s : fv.activity) {
        share_sum += s;
    }
    CHECK(std::abs(share_sum - 1.0) <= 1e-12);
}

TEST_CASE("derive_factors commercial identity cases") {
    // Gs = GDP makes sc = 1; F = Gs makes ic = 1.
    MacroRecord m = sample_macro();
    m.gdp = 1000.0;
    m.service_gdp = 1000.0;
    m.floor_space = 1000.0;
    m.hfc = 900.0;
    const auto enduses =
        make_enduses("R", 2000, Sector::Commercial, {10, 20, 30, 40}, {0.1, 0.1, 0.1, 0.1});
    const auto fv = derive_factors(m, enduses);
    CHECK(fv.common[2] == 1.0);
    CHECK(fv.common[3] == 1.0);
}

TEST_CASE("commercial prefix telescopes to one") {
    MacroRecord m = sample_macro();
    m.population = 1000.0;
    m.floor_space = 5000.0;
    m.gdp = 2e4;
    m.service_gdp = 1e4;
    const auto enduses =
        make_enduses("R", 2000, Sector::Commercial, {10, 20, 30, 40}, {0.1, 0.1, 0.1, 0.1});
    const auto fv = derive_factors(m, enduses);
    CHECK(fv.common[0] == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(fv.common[1] == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(fv.common[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fv.common[3] == doctest::Approx(0.5).epsilon(1e-15));
    const double prefix = fv.common[0] * fv.common[1] * fv.common[2] * fv.common[3];
    CHECK(std::abs(prefix - 1.0) <= 1e-12);
}

TEST_CASE("derive_factors rejects bad end-use sets") {
    const auto macro = sample_macro();

    auto enduses = make_enduses("R", 2000, Sector::Residential, {100, 50, 80, 30, 20, 120},
                                {0.1, 0.05, 0.08, 0.12, 0.2, 0.06});
    SUBCASE("missing end use") {
        enduses.pop_back();
        CHECK_THROWS_WITH_AS(derive_factors(macro, enduses), doctest::Contains("missing"),
                             Error);
    }
    SUBCASE("duplicate end use") {
        enduses[1] = enduses[0];
        CHECK_THROWS_AS(derive_factors(macro, enduses), Error);
    }
    SUBCASE("mixed region") {
        enduses[2].region = "OTHER";
        CHECK_THROWS_AS(derive_factors(macro, enduses), Error);
    }
    SUBCASE("zero total energy") {
        for (auto& rec : enduses) {
            rec.energy_mj = 0.0;
            rec.emissions_kgco2 = 0.0;
        }
        CHECK_THROWS_AS(derive_factors(macro, enduses), Error);
    }
}

TEST_CASE("k_j is undefined, not zero, for zero-energy end uses") {
    const auto macro = sample_macro();
    auto enduses = make_enduses("R", 2000, Sector::Residential, {100, 0, 80, 30, 20, 120},
                                {0.1, 0.05, 0.08, 0.12, 0.2, 0.06});
    const auto fv = derive_factors(macro, enduses);
    CHECK_FALSE(fv.emission_factor[1].has_value());
    CHECK(fv.activity[1] == 0.0);
}

TEST_CASE("intensity_from_factors evaluates the chain") {
    FactorVector fv;
    fv.sector = Sector::Residential;
    fv.common = {2.0, 10.0, 0.5, 0.1};
    fv.activity = {1, 0, 0, 0, 0, 0};
    fv.emission_factor = {2.0, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                          std::nullopt};

    SUBCASE("single active end use") {
        const auto point = intensity_from_factors(fv);
        CHECK(point.total == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(point.per_enduse[0] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(point.per_enduse[1] == 0.0);
    }
    SUBCASE("all shares zero gives zero intensity") {
        fv.activity[0] = 0.0;
        fv.emission_factor[0] = std::nullopt;
        CHECK(intensity_from_factors(fv).total == 0.0);
    }
    SUBCASE("undefined k with nonzero share is an error") {
        fv.activity[1] = 0.3;
        CHECK_THROWS_AS(intensity_from_factors(fv), Error);
    }
}

TEST_CASE("telescoping identity holds for random valid inputs") {
    std::mt19937_64 rng(7001);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    for (int trial = 0; trial < 100; ++trial) {
        const Sector sector = trial % 2 == 0 ? Sector::Residential : Sector::Commercial;
        MacroRecord m;
        m.region = "R";
        m.year = 2000;
        m.population = uniform(1e5, 1e8);
        m.households = m.population / uniform(2.0, 5.0);
        m.gdp = m.population * uniform(1e3, 5e4);
        m.service_gdp = m.gdp * uniform(0.3, 0.9);
        m.hfc = m.gdp * uniform(0.3, 0.9);
        m.floor_space = m.population * uniform(1.0, 30.0);

        const std::size_t n = end_use_count(sector);
        std::vector<double> energy(n);
        std::vector<double> k(n);
        for (std::size_t j = 0; j < n; ++j) {
            energy[j] = uniform(1e3, 1e9);
            k[j] = uniform(0.02, 0.2);
        }
        const auto enduses = make_enduses("R", 2000, sector, energy, k);
        const auto fv = derive_factors(m, enduses);
        const auto point = intensity_from_factors(fv);

        const double activity =
            sector == Sector::Residential ? m.households : m.floor_space;
        const double direct = aggregate_emissions(enduses) / activity;
        CHECK(std::abs(point.total - direct) <= 1e-12 * direct);

        // Commercial prefix telescopes to exactly one; residential shares
        // close on one.
        if (sector == Sector::Commercial) {
            const double prefix = fv.common[0] * fv.common[1] * fv.common[2] * fv.common[3];
            CHECK(std::abs(prefix - 1.0) <= 1e-12);
        } else {
            double share_sum = 0.0;
            for (double s : fv.activity) {
                share_sum += s;
            }
            CHECK(std::abs(share_sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("intensity is invariant under end-use record permutation") {
    std::mt19937_64 rng(7002);
    const auto macro = sample_macro();
    auto enduses = make_enduses("R", 2000, Sector::Residential, {100, 50, 80, 30, 20, 120},
                                {0.1, 0.05, 0.08, 0.12, 0.2, 0.06});
    const double reference = intensity_from_factors(derive_factors(macro, enduses)).total;
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(enduses.begin(), enduses.end(), rng);
        const double shuffled = intensity_from_factors(derive_factors(macro, enduses)).total;
        CHECK(shuffled == reference); // canonical slotting makes this bit-exact
    }
}

TEST_CASE("aggregate_emissions") {
    SUBCASE("sums the emission column") {
        auto enduses =
            make_enduses("R", 2000, Sector::Commercial, {1, 1, 1, 1}, {10, 20, 30, 40});
        CHECK(aggregate_emissions(enduses) == 100.0);
    }
    SUBCASE("six residential records with C_j = j*1000") {
        auto enduses = make_enduses("R", 2000, Sector::Residential, {1, 1, 1, 1, 1, 1},
                                    {1000, 2000, 3000, 4000, 5000, 6000});
        CHECK(aggregate_emissions(enduses) == 21000.0);
    }
    SUBCASE("all-zero records sum to zero") {
        auto enduses = make_enduses("R", 2000, Sector::Residential, {0, 0, 0, 0, 0, 0},
                                    {0, 0, 0, 0, 0, 0});
        CHECK(aggregate_emissions(enduses) == 0.0);
    }
    SUBCASE("mixed keys are rejected") {
        auto enduses =
            make_enduses("R", 2000, Sector::Commercial, {1, 1, 1, 1}, {10, 20, 30, 40});
        enduses[2].year = 2001;
        CHECK_THROWS_AS(aggregate_emissions(enduses), Error);
    }
}

TEST_CASE("identity_residual") {
    const auto macro = sample_macro();
    const auto enduses = make_enduses("R", 2000, Sector::Residential,
                                      {100, 50, 80, 30, 20, 120},
                                      {0.1, 0.05, 0.08, 0.12, 0.2, 0.06});
    const auto fv = derive_factors(macro, enduses);
    const double direct = aggregate_emissions(enduses) / macro.households;

    CHECK(identity_residual(fv, direct) <= 1e-12);
    CHECK(identity_residual(fv, intensity_from_factors(fv).total) == 0.0);
    CHECK(identity_residual(fv, direct * 1.01) ==
          doctest::Approx(0.01 / 1.01).epsilon(1e-9));
    CHECK_THROWS_AS(identity_residual(fv, 0.0), Error);
}
