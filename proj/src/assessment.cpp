#include "opcarb/assessment.hpp"

#include "opcarb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opcarb {

double decarbonization_intensity(const ContributionSet& cs) {
    double dci = 0.0;
    for (const auto& [name, value] : cs.per_factor()) {
        if (value < 0.0) {
            dci -= value;
        }
    }
    return dci;
}

double total_decarbonization(double dci, double activity, ActivityKind kind, Sector sector) {
    if (!(activity > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "activity must be positive");
    }
    const bool matches = (sector == Sector::Residential && kind == ActivityKind::Households) ||
                         (sector == Sector::Commercial && kind == ActivityKind::FloorSpace);
    if (!matches) {
        throw Error(ErrorCode::ActivitySectorMismatch,
                    std::string(sector_name(sector)) + " decarbonization must be scaled by " +
                        (sector == Sector::Residential ? "households" : "floor space"));
    }
    return dci * activity;
}

double per_capita_decarbonization(double dc, double population) {
    if (!(population > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "population must be positive");
    }
    return dc / population;
}

double decarbonization_efficiency(double cumulative_dc, double cumulative_emissions) {
    if (!(cumulative_emissions > 0.0)) {
        throw Error(ErrorCode::ZeroEmissions, "cumulative emissions must be positive");
    }
    if (cumulative_dc < 0.0) {
        throw Error(ErrorCode::NonPositiveInput, "cumulative decarbonization cannot be negative");
    }
    return cumulative_dc / cumulative_emissions;
}

double annual_decline_rate(double c0, double cT, int years) {
    if (!(c0 > 0.0) || !(cT > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "intensities must be positive");
    }
    if (years < 1) {
        throw Error(ErrorCode::InvalidArgument, "years must be at least 1");
    }
    return std::pow(cT / c0, 1.0 / years) - 1.0;
}

PhaseShareReport phase_shares(const std::vector<std::pair<int, double>>& annual_dc,
                              const std::vector<PeriodWindow>& stages) {
    for (std::size_t a = 0; a < stages.size(); ++a) {
        for (std::size_t b = a + 1; b < stages.size(); ++b) {
            const bool disjoint =
                stages[a].year_to < stages[b].year_from || stages[b].year_to < stages[a].year_from;
            if (!disjoint) {
                throw Error(ErrorCode::OverlappingStages,
                            "stages " + std::to_string(stages[a].year_from) + "-" +
                                std::to_string(stages[a].year_to) + " and " +
                                std::to_string(stages[b].year_from) + "-" +
                                std::to_string(stages[b].year_to) + " overlap");
            }
        }
    }

    PhaseShareReport report;
    report.stages = stages;
    report.shares.assign(stages.size(), 0.0);

    double total = 0.0;
    for (const auto& [year, dc] : annual_dc) {
        bool covered = false;
        for (std::size_t k = 0; k < stages.size(); ++k) {
            if (year >= stages[k].year_from && year <= stages[k].year_to) {
                report.shares[k] += dc;
                covered = true;
                break;
            }
        }
        if (!covered) {
            throw Error(ErrorCode::UncoveredYears,
                        "year " + std::to_string(year) + " falls in no stage");
        }
        total += dc;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::ZeroTotalDecarbonization,
                    "total decarbonization must be positive to compute shares");
    }
    for (double& share : report.shares) {
        share /= total;
    }
    return report;
}

std::vector<std::pair<std::string, double>>
rank_regions(const std::map<std::string, double>& metric_values, std::size_t top_n) {
    if (top_n < 1) {
        throw Error(ErrorCode::InvalidArgument, "top_n must be at least 1");
    }
    std::vector<std::pair<std::string, double>> entries(metric_values.begin(),
                                                        metric_values.end());
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first; // ties by region id
    });
    if (entries.size() > top_n) {
        entries.resize(top_n);
    }
    return entries;
}

CumulativeAssessment cumulative_assessment(const ChainResult& chain,
                                           const std::vector<MacroRecord>& macro_series) {
    if (macro_series.size() != chain.levels.size()) {
        throw Error(ErrorCode::YearMismatch, "macro series and chain cover different years");
    }
    for (std::size_t i = 0; i < macro_series.size(); ++i) {
        if (macro_series[i].year != chain.levels[i].year) {
            throw Error(ErrorCode::YearMismatch,
                        "macro year " + std::to_string(macro_series[i].year) +
                            " does not match chain year " +
                            std::to_string(chain.levels[i].year));
        }
    }

    const Sector sector = chain.cumulative.sector;
    const ActivityKind kind =
        sector == Sector::Residential ? ActivityKind::Households : ActivityKind::FloorSpace;

    CumulativeAssessment out;
    out.per_year.reserve(chain.annual.size());

    double cum_dc = 0.0;
    double cum_emissions = 0.0;
    for (std::size_t i = 0; i < chain.annual.size(); ++i) {
        const ContributionSet& cs = chain.annual[i];
        const MacroRecord& macro_end = macro_series[i + 1]; // end-of-window activity
        const double activity = sector == Sector::Residential ? macro_end.households
                                                              : macro_end.floor_space;

        DecarbMetrics metrics;
        metrics.window = cs.window;
        metrics.dci = decarbonization_intensity(cs);
        metrics.dc = total_decarbonization(metrics.dci, activity, kind, sector);
        metrics.per_capita_dc = per_capita_decarbonization(metrics.dc, macro_end.population);

        cum_dc += metrics.dc;
        cum_emissions += chain.levels[i + 1].total * activity;
        metrics.efficiency = cum_emissions > 0.0 ? cum_dc / cum_emissions : 0.0;

        out.per_year.push_back(metrics);
    }

    out.cumulative_dc = cum_dc;
    out.cumulative_emissions = cum_emissions;
    out.efficiency = cum_emissions > 0.0 ? cum_dc / cum_emissions : 0.0;
    return out;
}

} // namespace opcarb
