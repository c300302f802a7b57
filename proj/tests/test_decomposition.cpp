#include "opcarb/decomposition.hpp"

#include "opcarb/errors.hpp"
#include "testing_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace opcarb;
using namespace opcarb::testing;

namespace {

// The worked two-factor case: one active end use, pr 2 -> 3 and gr 10 -> 20,
// intensity 2 -> 6. Expected values follow from L(6,2) = 4 / ln 3.
FactorVector worked_example_state0() {
    FactorVector fv;
    fv.region = "R";
    fv.year = 2000;
    fv.sector = Sector::Residential;
    fv.common = {2.0, 10.0, 0.5, 0.1};
    fv.activity = {1, 0, 0, 0, 0, 0};
    fv.emission_factor.assign(6, std::nullopt);
    fv.emission_factor[0] = 2.0;
    return fv;
}

FactorVector worked_example_stateT() {
    FactorVector fv = worked_example_state0();
    fv.year = 2001;
    fv.common[0] = 3.0;
    fv.common[1] = 20.0;
    return fv;
}

double max_abs_factor_difference(const ContributionSet& a, const ContributionSet& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.common.size(); ++i) {
        worst = std::max(worst, std::abs(a.common[i] - b.common[i]));
    }
    for (std::size_t j = 0; j < a.activity.size(); ++j) {
        worst = std::max(worst, std::abs(a.activity[j] - b.activity[j]));
        worst = std::max(worst, std::abs(a.emission[j] - b.emission[j]));
    }
    return worst;
}

} // namespace

TEST_CASE("log_mean basics") {
    CHECK(log_mean(1.0, 1.0) == 1.0);
    CHECK(log_mean(2.0, 8.0) == doctest::Approx(6.0 / std::log(4.0)).epsilon(1e-14));
    CHECK(log_mean(2.0, 8.0) == doctest::Approx(4.328085).epsilon(1e-6));
    CHECK_THROWS_AS(log_mean(0.0, 1.0), Error);
    CHECK_THROWS_AS(log_mean(1.0, -2.0), Error);
}

TEST_CASE("log_mean symmetry and bounds on random pairs") {
    std::mt19937_64 rng(8001);
    std::uniform_real_distribution<double> dist(1e-8, 1e8);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = dist(rng);
        const double b = dist(rng);
        const double lab = log_mean(a, b);
        CHECK(lab == log_mean(b, a)); // bit-exact by construction
        CHECK(lab >= std::min(a, b));
        CHECK(lab <= std::max(a, b));
    }
}

TEST_CASE("log_mean stays accurate for near-equal arguments") {
    const double a = 3.0;
    const double b = a * (1.0 + 1e-13);
    const double lm = log_mean(a, b);
    CHECK(lm >= a);
    CHECK(lm <= b);
    // Near-equal arguments: L ~ arithmetic mean to second order.
    CHECK(lm == doctest::Approx(0.5 * (a + b)).epsilon(1e-12));
}

TEST_CASE("substitute_zeros") {
    FactorVector fv = worked_example_state0();

    SUBCASE("replaces zero shares and undefined emission factors") {
        const auto out = substitute_zeros(fv, 1e-20);
        CHECK(out.activity[0] == 1.0);
        for (std::size_t j = 1; j < out.activity.size(); ++j) {
            CHECK(out.activity[j] == 1e-20);
            CHECK(*out.emission_factor[j] == 1e-20);
        }
        CHECK(*out.emission_factor[0] == 2.0);
    }
    SUBCASE("identity when nothing is zero") {
        fv.activity = {0.3, 0.1, 0.2, 0.1, 0.1, 0.2};
        for (auto& k : fv.emission_factor) {
            k = 0.1;
        }
        const auto out = substitute_zeros(fv, 1e-20);
        CHECK(out.activity == fv.activity);
        CHECK(out.emission_factor == fv.emission_factor);
    }
    SUBCASE("rejects nonpositive delta") {
        CHECK_THROWS_AS(substitute_zeros(fv, 0.0), Error);
    }
}

TEST_CASE("decompose_period on the no-change state is all zeros") {
    const auto s = make_state(worked_example_state0());
    const auto cs = decompose_period(s, s, {2000, 2001});
    CHECK(cs.delta_total == 0.0);
    for (double c : cs.common) {
        CHECK(c == 0.0);
    }
    for (std::size_t j = 0; j < cs.activity.size(); ++j) {
        CHECK(cs.activity[j] == 0.0);
        CHECK(cs.emission[j] == 0.0);
    }
    CHECK(cs.residual == 0.0);
}

TEST_CASE("single-factor change carries the whole intensity change") {
    auto f0 = worked_example_state0();
    auto fT = f0;
    fT.year = 2001;
    fT.common[1] = 20.0; // gr 10 -> 20, c 2 -> 4
    const auto cs = decompose_period(make_state(f0), make_state(fT), {2000, 2001});
    CHECK(cs.delta_total == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(cs.common[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cs.common[0] == 0.0);
    CHECK(cs.common[2] == 0.0);
    CHECK(cs.common[3] == 0.0);
    CHECK(cs.activity_total() == 0.0);
    CHECK(cs.emission_total() == 0.0);
}

TEST_CASE("worked two-factor decomposition") {
    const auto cs = decompose_period(make_state(worked_example_state0()),
                                     make_state(worked_example_stateT()), {2000, 2001});

    // Closed-form oracle: L(6,2) = 4/ln3, Delta_pr = L ln 1.5, Delta_gr = L ln 2.
    const double weight = 4.0 / std::log(3.0);
    const double expected_pr = weight * std::log(1.5);
    const double expected_gr = weight * std::log(2.0);

    CHECK(cs.common[0] == doctest::Approx(expected_pr).epsilon(1e-12));
    CHECK(cs.common[1] == doctest::Approx(expected_gr).epsilon(1e-12));
    CHECK(cs.common[0] == doctest::Approx(1.476).epsilon(1e-3));
    CHECK(cs.common[1] == doctest::Approx(2.524).epsilon(1e-3));
    CHECK(std::abs(cs.contribution_sum() - 4.0) <= 1e-9);
    CHECK(std::abs(cs.residual) <= 1e-9);
}

TEST_CASE("oracle matches the worked example") {
    const auto s0 = make_state(worked_example_state0());
    const auto sT = make_state(worked_example_stateT());
    const auto exact = decompose_period(s0, sT, {2000, 2001});
    const auto numeric = path_integral_oracle(s0, sT, {2000, 2001}, 100000);

    CHECK(numeric.common[0] ==
          doctest::Approx(exact.common[0]).epsilon(1e-6));
    CHECK(numeric.common[1] ==
          doctest::Approx(exact.common[1]).epsilon(1e-6));
    CHECK(std::abs(numeric.contribution_sum() - 4.0) <= 1e-6);
}

TEST_CASE("oracle is exactly zero for a no-change state") {
    const auto s = make_state(worked_example_state0());
    for (int steps : {1, 7, 1000}) {
        const auto cs = path_integral_oracle(s, s, {2000, 2001}, steps);
        CHECK(cs.delta_total == 0.0);
        for (double c : cs.common) {
            CHECK(c == 0.0);
        }
        CHECK(cs.activity_total() == 0.0);
        CHECK(cs.emission_total() == 0.0);
    }
    CHECK_THROWS_AS(path_integral_oracle(s, s, {2000, 2001}, 0), Error);
}

TEST_CASE("oracle converges monotonically on random instances") {
    std::mt19937_64 rng(8002);
    for (int trial = 0; trial < 10; ++trial) {
        const Sector sector = trial % 2 == 0 ? Sector::Residential : Sector::Commercial;
        const auto f0 = random_factors(rng, sector);
        const auto fT = scale_factors(rng, f0, 0.5, 2.0);
        const auto s0 = make_state(f0);
        const auto sT = make_state(fT);
        const auto exact = decompose_period(s0, sT, {2000, 2001});

        double previous = std::numeric_limits<double>::infinity();
        for (int steps : {1, 10, 100, 1000}) {
            const auto numeric = path_integral_oracle(s0, sT, {2000, 2001}, steps);
            const double error = max_abs_factor_difference(exact, numeric);
            CHECK(error <= previous + 1e-15);
            previous = error;
        }
        CHECK(previous <= 1e-6 * std::max(1.0, std::abs(exact.delta_total)));
    }
}

TEST_CASE("residual-free closure on random state pairs") {
    std::mt19937_64 rng(8003);
    for (int trial = 0; trial < 200; ++trial) {
        const Sector sector = trial % 2 == 0 ? Sector::Residential : Sector::Commercial;
        const auto f0 = random_factors(rng, sector);
        const auto fT = scale_factors(rng, f0, 0.25, 4.0);
        const auto cs = decompose_period(make_state(f0), make_state(fT), {2000, 2001});
        const double tolerance = 1e-9 * std::max(1.0, std::abs(cs.delta_total));
        CHECK(std::abs(cs.contribution_sum() - cs.delta_total) <= tolerance);
        CHECK(std::abs(cs.residual) <= tolerance);
    }
}

TEST_CASE("time reversal negates every contribution") {
    std::mt19937_64 rng(8004);
    for (int trial = 0; trial < 100; ++trial) {
        const Sector sector = trial % 2 == 0 ? Sector::Residential : Sector::Commercial;
        const auto s0 = make_state(random_factors(rng, sector));
        const auto sT = make_state(scale_factors(rng, s0.factors, 0.25, 4.0));
        const auto forward = decompose_period(s0, sT, {2000, 2001});
        const auto backward = decompose_period(sT, s0, {2000, 2001});
        for (std::size_t i = 0; i < forward.common.size(); ++i) {
            CHECK(std::abs(forward.common[i] + backward.common[i]) <= 1e-12);
        }
        for (std::size_t j = 0; j < forward.activity.size(); ++j) {
            CHECK(std::abs(forward.activity[j] + backward.activity[j]) <= 1e-12);
            CHECK(std::abs(forward.emission[j] + backward.emission[j]) <= 1e-12);
        }
        CHECK(forward.delta_total == -backward.delta_total);
    }
}

TEST_CASE("zero-change factors contribute exactly zero") {
    std::mt19937_64 rng(8005);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f0 = random_factors(rng, Sector::Residential);
        auto fT = scale_factors(rng, f0, 0.5, 2.0);
        fT.common[2] = f0.common[2];       // hr frozen
        fT.activity[3] = f0.activity[3];   // one share frozen
        fT.emission_factor[5] = f0.emission_factor[5];
        const auto cs = decompose_period(make_state(f0), make_state(fT), {2000, 2001});
        CHECK(cs.common[2] == 0.0);
        CHECK(cs.activity[3] == 0.0);
        CHECK(cs.emission[5] == 0.0);
    }
}

TEST_CASE("decompose_period validation") {
    const auto res = make_state(worked_example_state0());
    std::mt19937_64 rng(8006);
    const auto com = make_state(random_factors(rng, Sector::Commercial));

    SUBCASE("sector mismatch") {
        CHECK_THROWS_AS(decompose_period(res, com, {2000, 2001}), Error);
    }
    SUBCASE("region mismatch") {
        auto other = res;
        other.factors.region = "OTHER";
        other.intensity.region = "OTHER";
        CHECK_THROWS_AS(decompose_period(res, other, {2000, 2001}), Error);
    }
    SUBCASE("unsubstituted state is rejected") {
        FactorState raw;
        raw.factors = worked_example_state0(); // zero shares, undefined k
        raw.intensity = intensity_from_factors(raw.factors);
        CHECK_THROWS_AS(decompose_period(raw, raw, {2000, 2001}), Error);
    }
    SUBCASE("stale intensity is rejected") {
        auto stale = res;
        stale.intensity.total *= 1.5;
        CHECK_THROWS_AS(decompose_period(stale, res, {2000, 2001}), Error);
    }
}

TEST_CASE("two-delta stability for a vanishing end use") {
    // End use absent in period 0, present in period T; common factors fixed.
    FactorVector f0 = worked_example_state0();
    f0.activity = {0.8, 0.0, 0.05, 0.05, 0.05, 0.05};
    f0.emission_factor = {0.1, std::nullopt, 0.1, 0.1, 0.1, 0.1};
    FactorVector fT = f0;
    fT.year = 2001;
    fT.activity = {0.6, 0.2, 0.05, 0.05, 0.05, 0.05};
    fT.emission_factor = {0.1, 0.12, 0.1, 0.1, 0.1, 0.1};

    auto run = [&](double delta) {
        return decompose_period(make_state(f0, delta), make_state(fT, delta), {2000, 2001});
    };
    const auto coarse = run(1e-10);
    const auto fine = run(1e-20);

    // The appearing end use's combined contribution approaches its intensity
    // level at T; the split between its share and emission-factor parts is
    // delta-dependent, the sum is not.
    const double appearing_coarse = coarse.activity[1] + coarse.emission[1];
    const double appearing_fine = fine.activity[1] + fine.emission[1];
    const double cT1 = make_state(fT).intensity.per_enduse[1];
    CHECK(appearing_fine == doctest::Approx(cT1).epsilon(1e-9));
    CHECK(std::abs(appearing_coarse - appearing_fine) <=
          1e-6 * std::max(std::abs(appearing_coarse), std::abs(appearing_fine)));

    // Everything else is read off stably as well.
    for (std::size_t i = 0; i < coarse.common.size(); ++i) {
        CHECK(coarse.common[i] == 0.0);
        CHECK(fine.common[i] == 0.0);
    }
    for (std::size_t j = 0; j < coarse.activity.size(); ++j) {
        if (j == 1) {
            continue;
        }
        const double a = coarse.activity[j] + coarse.emission[j];
        const double b = fine.activity[j] + fine.emission[j];
        CHECK(std::abs(a - b) <= 1e-6 * std::max({std::abs(a), std::abs(b), 1e-30}));
    }
    CHECK(coarse.delta_total ==
          doctest::Approx(fine.delta_total).epsilon(1e-9));
}

TEST_CASE("chain_decompose") {
    std::mt19937_64 rng(8007);

    SUBCASE("two-year chain equals a single decomposition") {
        const auto s0 = make_state(random_factors(rng, Sector::Residential, "R", 2000));
        const auto s1 = make_state(scale_factors(rng, s0.factors, 0.5, 2.0));
        const auto chain = chain_decompose({s0, s1});
        const auto single = decompose_period(s0, s1, {2000, 2001});
        REQUIRE(chain.annual.size() == 1);
        CHECK(chain.annual[0].delta_total == single.delta_total);
        CHECK(chain.annual[0].common == single.common);
        CHECK(chain.cumulative.delta_total == single.delta_total);
    }

    SUBCASE("annual deltas telescope over a longer series") {
        std::vector<FactorState> series;
        auto fv = random_factors(rng, Sector::Commercial, "R", 2000);
        series.push_back(make_state(fv));
        for (int year = 2001; year <= 2020; ++year) {
            fv = scale_factors(rng, fv, 0.8, 1.25);
            series.push_back(make_state(fv));
        }
        const auto chain = chain_decompose(series);
        REQUIRE(chain.annual.size() == 20);

        const double total_change =
            series.back().intensity.total - series.front().intensity.total;
        double delta_sum = 0.0;
        for (const auto& cs : chain.annual) {
            delta_sum += cs.delta_total;
        }
        CHECK(std::abs(delta_sum - total_change) <=
              1e-9 * std::max(1.0, std::abs(total_change)));
        CHECK(chain.cumulative.delta_total == doctest::Approx(delta_sum).epsilon(1e-15));

        // Cumulative per-factor totals are the sums of the annual ones, and
        // each annual number agrees with the independent path integral.
        double annual_gr_sum = 0.0;
        double oracle_gr_sum = 0.0;
        for (std::size_t i = 0; i < chain.annual.size(); ++i) {
            annual_gr_sum += chain.annual[i].common[1];
            oracle_gr_sum += path_integral_oracle(series[i], series[i + 1],
                                                  chain.annual[i].window, 10000)
                                 .common[1];
        }
        CHECK(chain.cumulative.common[1] == doctest::Approx(annual_gr_sum).epsilon(1e-15));
        CHECK(chain.cumulative.common[1] ==
              doctest::Approx(oracle_gr_sum)
                  .epsilon(1e-4));
    }

    SUBCASE("gaps and short series are rejected") {
        const auto s0 = make_state(random_factors(rng, Sector::Residential, "R", 2000));
        auto skipped = make_state(scale_factors(rng, s0.factors, 0.5, 2.0, 2));
        CHECK_THROWS_AS(chain_decompose({s0, skipped}), Error);
        CHECK_THROWS_AS(chain_decompose({s0}), Error);
    }
}
