#include "opcarb/decomposition.hpp"

#include "opcarb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace opcarb {

namespace {

// ln(num/den), antisymmetric bit-for-bit under argument swap and exactly zero
// for bit-equal arguments. Zero-change factors must contribute exactly zero.
double log_ratio(double num, double den) {
    if (num == den) {
        return 0.0;
    }
    if (num > den) {
        return std::log(num / den);
    }
    return -std::log(den / num);
}

struct EndUseIntensities {
    std::vector<double> values;
    double total = 0.0;
};

// Per-end-use intensity contributions reconstructed from the factor chain.
// The decomposition works on these products, so closure holds by
// construction; the caller's IntensityPoint is only cross-checked.
EndUseIntensities reconstruct(const FactorVector& fv) {
    EndUseIntensities out;
    out.values.resize(fv.activity.size());
    const double prefix = fv.common[0] * fv.common[1] * fv.common[2] * fv.common[3];
    for (std::size_t j = 0; j < fv.activity.size(); ++j) {
        const double a = fv.activity[j];
        if (!(a > 0.0)) {
            throw Error(ErrorCode::NonPositiveFactor,
                        "activity factor is not positive; apply substitute_zeros first");
        }
        if (!fv.emission_factor[j] || !(*fv.emission_factor[j] > 0.0)) {
            throw Error(ErrorCode::NonPositiveFactor,
                        "emission factor is not positive; apply substitute_zeros first");
        }
        out.values[j] = prefix * a * *fv.emission_factor[j];
        out.total += out.values[j];
    }
    for (double c : fv.common) {
        if (!(c > 0.0)) {
            throw Error(ErrorCode::NonPositiveFactor, "common factor is not positive");
        }
    }
    return out;
}

void check_pair(const FactorState& s0, const FactorState& sT) {
    if (s0.factors.sector != sT.factors.sector) {
        throw Error(ErrorCode::SectorMismatch, "cannot decompose across sectors");
    }
    if (s0.factors.region != sT.factors.region) {
        throw Error(ErrorCode::MixedKeys, "states belong to different regions: " +
                                              s0.factors.region + " vs " + sT.factors.region);
    }
}

void check_state_consistency(const FactorState& s, double reconstructed_total) {
    const double tolerance = 1e-9 * std::max(1.0, reconstructed_total);
    if (std::abs(reconstructed_total - s.intensity.total) > tolerance) {
        throw Error(ErrorCode::InconsistentState,
                    "intensity does not match its factor vector; rebuild the state with "
                    "make_state");
    }
}

} // namespace

double ContributionSet::activity_total() const {
    return std::accumulate(activity.begin(), activity.end(), 0.0);
}

double ContributionSet::emission_total() const {
    return std::accumulate(emission.begin(), emission.end(), 0.0);
}

double ContributionSet::contribution_sum() const {
    double sum = 0.0;
    for (double c : common) {
        sum += c;
    }
    return sum + activity_total() + emission_total();
}

std::vector<std::pair<std::string, double>> ContributionSet::per_factor() const {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(6);
    for (std::size_t i = 0; i < common.size(); ++i) {
        out.emplace_back(std::string(common_factor_name(sector, i)), common[i]);
    }
    out.emplace_back(std::string(activity_factor_name(sector)), activity_total());
    out.emplace_back("k", emission_total());
    return out;
}

double log_mean(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "log mean requires positive arguments");
    }
    if (a == b) {
        return a;
    }
    // Evaluate on (hi, lo) so the result is symmetric bit-for-bit.
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (hi < 2.0 * lo) {
        // hi - lo is exact here (Sterbenz); log1p keeps the small log accurate.
        const double diff = hi - lo;
        return diff / std::log1p(diff / lo);
    }
    return (hi - lo) / (std::log(hi) - std::log(lo));
}

FactorVector substitute_zeros(const FactorVector& fv, double delta) {
    if (!(delta > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "delta must be positive");
    }
    FactorVector out = fv;
    for (std::size_t j = 0; j < out.activity.size(); ++j) {
        if (out.activity[j] == 0.0) {
            out.activity[j] = delta;
        }
        if (!out.emission_factor[j] || *out.emission_factor[j] == 0.0) {
            out.emission_factor[j] = delta;
        }
    }
    return out;
}

FactorState make_state(const FactorVector& fv, double delta) {
    FactorState state;
    state.factors = substitute_zeros(fv, delta);
    const EndUseIntensities rec = reconstruct(state.factors);
    state.intensity.region = fv.region;
    state.intensity.year = fv.year;
    state.intensity.sector = fv.sector;
    state.intensity.per_enduse = rec.values;
    state.intensity.total = rec.total;
    return state;
}

ContributionSet decompose_period(const FactorState& s0, const FactorState& sT,
                                 const PeriodWindow& window) {
    check_pair(s0, sT);

    const FactorVector& f0 = s0.factors;
    const FactorVector& fT = sT.factors;
    const std::size_t n = f0.activity.size();

    const EndUseIntensities c0 = reconstruct(f0);
    const EndUseIntensities cT = reconstruct(fT);
    if (!(c0.total > 0.0) || !(cT.total > 0.0)) {
        throw Error(ErrorCode::DegenerateState, "intensity must be positive in both periods");
    }
    check_state_consistency(s0, c0.total);
    check_state_consistency(sT, cT.total);

    std::vector<double> weight(n);
    for (std::size_t j = 0; j < n; ++j) {
        weight[j] = log_mean(cT.values[j], c0.values[j]);
    }

    ContributionSet cs;
    cs.region = f0.region;
    cs.sector = f0.sector;
    cs.window = window;
    cs.delta_total = cT.total - c0.total;
    cs.activity.resize(n);
    cs.emission.resize(n);

    for (std::size_t i = 0; i < cs.common.size(); ++i) {
        const double lr = log_ratio(fT.common[i], f0.common[i]);
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += weight[j] * lr;
        }
        cs.common[i] = sum;
    }
    for (std::size_t j = 0; j < n; ++j) {
        cs.activity[j] = weight[j] * log_ratio(fT.activity[j], f0.activity[j]);
        cs.emission[j] = weight[j] * log_ratio(*fT.emission_factor[j], *f0.emission_factor[j]);
    }

    cs.residual = cs.delta_total - cs.contribution_sum();
    return cs;
}

ChainResult chain_decompose(const std::vector<FactorState>& series) {
    if (series.size() < 2) {
        throw Error(ErrorCode::FewerThanTwoYears, "a chain needs at least two years");
    }
    for (std::size_t i = 1; i < series.size(); ++i) {
        const int prev = series[i - 1].factors.year;
        const int cur = series[i].factors.year;
        if (cur != prev + 1) {
            throw Error(ErrorCode::GapInSeries, "years " + std::to_string(prev) + " -> " +
                                                    std::to_string(cur) +
                                                    " are not consecutive");
        }
    }

    ChainResult result;
    result.annual.reserve(series.size() - 1);
    result.levels.reserve(series.size());
    for (const auto& state : series) {
        result.levels.push_back(state.intensity);
    }

    for (std::size_t i = 1; i < series.size(); ++i) {
        PeriodWindow window{series[i - 1].factors.year, series[i].factors.year};
        result.annual.push_back(decompose_period(series[i - 1], series[i], window));
    }

    // Element-wise sums over the annual sets; additivity of the decomposition
    // makes this the full-period total.
    ContributionSet& cum = result.cumulative;
    cum.region = series.front().factors.region;
    cum.sector = series.front().factors.sector;
    cum.window = PeriodWindow{series.front().factors.year, series.back().factors.year};
    cum.activity.assign(series.front().factors.activity.size(), 0.0);
    cum.emission.assign(series.front().factors.activity.size(), 0.0);
    for (const auto& annual : result.annual) {
        cum.delta_total += annual.delta_total;
        for (std::size_t i = 0; i < cum.common.size(); ++i) {
            cum.common[i] += annual.common[i];
        }
        for (std::size_t j = 0; j < cum.activity.size(); ++j) {
            cum.activity[j] += annual.activity[j];
            cum.emission[j] += annual.emission[j];
        }
        cum.residual += annual.residual;
    }
    return result;
}

ContributionSet path_integral_oracle(const FactorState& s0, const FactorState& sT,
                                     const PeriodWindow& window, int steps) {
    if (steps < 1) {
        throw Error(ErrorCode::InvalidArgument, "steps must be at least 1");
    }
    check_pair(s0, sT);

    const FactorVector& f0 = s0.factors;
    const FactorVector& fT = sT.factors;
    const std::size_t n = f0.activity.size();

    // Factor layout per end use j: common[0..3], activity[j], emission[j].
    constexpr std::size_t kChain = 6;
    auto chain_at = [&](const FactorVector& fv, std::size_t j, std::array<double, kChain>& x) {
        x[0] = fv.common[0];
        x[1] = fv.common[1];
        x[2] = fv.common[2];
        x[3] = fv.common[3];
        x[4] = fv.activity[j];
        if (!fv.emission_factor[j]) {
            throw Error(ErrorCode::NonPositiveFactor, "undefined emission factor");
        }
        x[5] = *fv.emission_factor[j];
    };

    ContributionSet cs;
    cs.region = f0.region;
    cs.sector = f0.sector;
    cs.window = window;
    cs.activity.assign(n, 0.0);
    cs.emission.assign(n, 0.0);

    double total0 = 0.0;
    double totalT = 0.0;

    for (std::size_t j = 0; j < n; ++j) {
        std::array<double, kChain> x0{};
        std::array<double, kChain> xT{};
        chain_at(f0, j, x0);
        chain_at(fT, j, xT);

        std::array<double, kChain> rate{};
        for (std::size_t i = 0; i < kChain; ++i) {
            if (!(x0[i] > 0.0) || !(xT[i] > 0.0)) {
                throw Error(ErrorCode::NonPositiveFactor,
                            "all factor components must be positive on the path");
            }
            rate[i] = std::log(xT[i] / x0[i]);
        }

        double prod0 = 1.0;
        double prodT = 1.0;
        for (std::size_t i = 0; i < kChain; ++i) {
            prod0 *= x0[i];
            prodT *= xT[i];
        }
        total0 += prod0;
        totalT += prodT;

        // Midpoint rule on each factor's term (dc_j/dx_i) * x_i'(t).
        const double dt = 1.0 / steps;
        std::array<double, kChain> acc{};
        std::array<double, kChain> x{};
        for (int m = 0; m < steps; ++m) {
            const double t = (m + 0.5) * dt;
            for (std::size_t i = 0; i < kChain; ++i) {
                x[i] = x0[i] * std::exp(rate[i] * t);
            }
            for (std::size_t i = 0; i < kChain; ++i) {
                double others = 1.0;
                for (std::size_t u = 0; u < kChain; ++u) {
                    if (u != i) {
                        others *= x[u];
                    }
                }
                // x_i'(t) = x_i(t) * rate_i for the log-linear path
                acc[i] += others * x[i] * rate[i] * dt;
            }
        }

        for (std::size_t i = 0; i < 4; ++i) {
            cs.common[i] += acc[i];
        }
        cs.activity[j] = acc[4];
        cs.emission[j] = acc[5];
    }

    cs.delta_total = totalT - total0;
    cs.residual = cs.delta_total - cs.contribution_sum();
    return cs;
}

} // namespace opcarb
