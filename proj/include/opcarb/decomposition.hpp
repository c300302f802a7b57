#pragma once

#include "opcarb/factors.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace opcarb {

inline constexpr double kDefaultZeroDelta = 1e-20;

struct PeriodWindow {
    int year_from = 0; // period 0
    int year_to = 0;   // period T, strictly greater

    bool operator==(const PeriodWindow&) const = default;
};

// Additive decomposition of an intensity change c^T - c^0 into per-factor
// contributions. `common` mirrors FactorVector::common (pr/gr/hr/er or
// pc/gc/sc/ic); `activity` and `emission` carry the per-end-use detail of the
// end-use-indexed factors (s or e, and k). The contributions close on
// delta_total up to floating-point noise; the leftover is kept in `residual`,
// never redistributed.
struct ContributionSet {
    std::string region;
    Sector sector = Sector::Residential;
    PeriodWindow window;

    double delta_total = 0.0;
    std::array<double, 4> common{};
    std::vector<double> activity;
    std::vector<double> emission;
    double residual = 0.0;

    double activity_total() const;
    double emission_total() const;

    /// Sum of all six factor contributions.
    double contribution_sum() const;

    /// The six factor-level contributions as (name, value), canonical order.
    std::vector<std::pair<std::string, double>> per_factor() const;
};

/// One period endpoint: substituted factors plus the intensity reconstructed
/// from them. Build with make_state.
struct FactorState {
    FactorVector factors;
    IntensityPoint intensity;
};

/// Logarithmic mean (a - b) / (ln a - ln b), continuously extended with
/// L(a, a) = a. Symmetric bit-for-bit; lies between min and max.
double log_mean(double a, double b);

/// Replaces zero or undefined end-use-indexed components (s_j/e_j and k_j) by
/// `delta` so that the logarithms of the decomposition stay defined. Inputs
/// without zeros pass through unchanged.
FactorVector substitute_zeros(const FactorVector& fv, double delta = kDefaultZeroDelta);

/// substitute_zeros followed by intensity reconstruction.
FactorState make_state(const FactorVector& fv, double delta = kDefaultZeroDelta);

/// Exact additive decomposition of the intensity change between two states
/// of one region-sector, weighted by the logarithmic mean of the end-use
/// intensity contributions. States must be zero-substituted.
ContributionSet decompose_period(const FactorState& s0, const FactorState& sT,
                                 const PeriodWindow& window);

/// Consecutive-year decompositions over a gap-free series, plus element-wise
/// cumulative totals spanning the whole series.
struct ChainResult {
    std::vector<ContributionSet> annual;
    ContributionSet cumulative;
    std::vector<IntensityPoint> levels; // per input year, reconstructed
};

ChainResult chain_decompose(const std::vector<FactorState>& series);

/// Numerical realization of the decomposition differential: every factor is
/// interpolated log-linearly between the two states and each partial term is
/// integrated with the midpoint rule over `steps` subintervals. Converges to
/// decompose_period as steps grows; kept free of the log-mean weighting so it
/// can serve as an independent check.
ContributionSet path_integral_oracle(const FactorState& s0, const FactorState& sT,
                                     const PeriodWindow& window, int steps);

} // namespace opcarb
