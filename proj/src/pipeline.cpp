#include "opcarb/pipeline.hpp"

#include "opcarb/errors.hpp"
#include "opcarb/factors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace opcarb {

namespace {

// A window is usable only if one contiguous coverage segment spans it.
bool segment_covers(const std::vector<YearRange>& segments, int from, int to) {
    return std::any_of(segments.begin(), segments.end(), [&](const YearRange& seg) {
        return seg.first <= from && to <= seg.last;
    });
}

void check_stage_partition(const std::vector<PeriodWindow>& stages, int from, int to) {
    if (stages.empty()) {
        throw Error(ErrorCode::InvalidArgument, "stage mode requires --stages");
    }
    if (stages.front().year_from != from || stages.back().year_to != to) {
        throw Error(ErrorCode::InvalidArgument,
                    "stages must span the window " + std::to_string(from) + "-" +
                        std::to_string(to));
    }
    for (std::size_t k = 0; k < stages.size(); ++k) {
        if (stages[k].year_to <= stages[k].year_from) {
            throw Error(ErrorCode::InvalidArgument, "stage windows must be at least one year");
        }
        if (k > 0 && stages[k].year_from != stages[k - 1].year_to) {
            throw Error(ErrorCode::InvalidArgument,
                        "consecutive stages must share endpoints (e.g. 2000-2005,2005-2010)");
        }
    }
}

std::optional<double> share_of_delta(double contribution, double delta_total) {
    if (delta_total == 0.0) {
        return std::nullopt;
    }
    return contribution / std::abs(delta_total);
}

void append_rows(std::vector<ContributionRow>& rows, const ContributionSet& cs) {
    auto add = [&](const std::string& factor, const std::string& end_use, double value) {
        ContributionRow row;
        row.region = cs.region;
        row.sector = cs.sector;
        row.year_from = cs.window.year_from;
        row.year_to = cs.window.year_to;
        row.factor = factor;
        row.end_use = end_use;
        row.contribution = value;
        row.share_of_delta = share_of_delta(value, cs.delta_total);
        row.residual = cs.residual;
        rows.push_back(std::move(row));
    };

    for (std::size_t i = 0; i < cs.common.size(); ++i) {
        add(std::string(common_factor_name(cs.sector, i)), {}, cs.common[i]);
    }
    const auto set = end_uses(cs.sector);
    const std::string activity_name(activity_factor_name(cs.sector));
    add(activity_name, {}, cs.activity_total());
    for (std::size_t j = 0; j < set.size(); ++j) {
        add(activity_name, std::string(end_use_name(set[j])), cs.activity[j]);
    }
    add("k", {}, cs.emission_total());
    for (std::size_t j = 0; j < set.size(); ++j) {
        add("k", std::string(end_use_name(set[j])), cs.emission[j]);
    }
}

struct WindowMetrics {
    PeriodWindow window;
    double dci = 0.0;
    double dc = 0.0;
    double per_capita = 0.0;
    double decline_rate = 0.0;
    double emissions = 0.0; // activity-scaled emissions over the window's end years
};

WindowMetrics window_metrics(const RegionSeries& series, const ContributionSet& cs) {
    const Sector sector = cs.sector;
    const ActivityKind kind =
        sector == Sector::Residential ? ActivityKind::Households : ActivityKind::FloorSpace;
    const int base_year = series.years.front();
    const std::size_t from_idx = static_cast<std::size_t>(cs.window.year_from - base_year);
    const std::size_t to_idx = static_cast<std::size_t>(cs.window.year_to - base_year);

    const MacroRecord& macro_end = series.macro[to_idx];
    const double activity =
        sector == Sector::Residential ? macro_end.households : macro_end.floor_space;

    WindowMetrics m;
    m.window = cs.window;
    m.dci = decarbonization_intensity(cs);
    m.dc = total_decarbonization(m.dci, activity, kind, sector);
    m.per_capita = per_capita_decarbonization(m.dc, macro_end.population);
    m.decline_rate = annual_decline_rate(series.states[from_idx].intensity.total,
                                         series.states[to_idx].intensity.total,
                                         cs.window.year_to - cs.window.year_from);
    for (std::size_t t = from_idx + 1; t <= to_idx; ++t) {
        const double a = sector == Sector::Residential ? series.macro[t].households
                                                       : series.macro[t].floor_space;
        m.emissions += series.states[t].intensity.total * a;
    }
    return m;
}

std::vector<ContributionSet> decompose_series(const RegionSeries& series,
                                              const RunConfig& config) {
    if (config.mode == ChainingMode::Annual) {
        return chain_decompose(series.states).annual;
    }
    std::vector<ContributionSet> sets;
    const int base_year = series.years.front();
    for (const auto& stage : config.stages) {
        const auto& s0 = series.states[static_cast<std::size_t>(stage.year_from - base_year)];
        const auto& sT = series.states[static_cast<std::size_t>(stage.year_to - base_year)];
        sets.push_back(decompose_period(s0, sT, stage));
    }
    return sets;
}

} // namespace

std::vector<PeriodWindow> parse_stage_list(const std::string& text) {
    std::vector<PeriodWindow> stages;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string item = text.substr(start, end - start);
        const std::size_t dash = item.find('-');
        if (dash == std::string::npos) {
            throw Error(ErrorCode::InvalidArgument,
                        "stage '" + item + "' is not of the form FROM-TO");
        }
        PeriodWindow window;
        try {
            window.year_from = std::stoi(item.substr(0, dash));
            window.year_to = std::stoi(item.substr(dash + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument,
                        "stage '" + item + "' is not of the form FROM-TO");
        }
        if (window.year_to <= window.year_from) {
            throw Error(ErrorCode::InvalidArgument,
                        "stage '" + item + "' must end after it starts");
        }
        stages.push_back(window);
        start = end + 1;
    }
    return stages;
}

std::vector<RegionSeries> select_series(const PanelDataset& panel, const RunConfig& config) {
    std::vector<std::string> regions = config.regions;
    if (regions.empty()) {
        for (const auto& [key, segments] : panel.coverage) {
            if (key.second == config.sector) {
                regions.push_back(key.first);
            }
        }
        if (regions.empty()) {
            throw Error(ErrorCode::RegionNotCovered,
                        "no region has " + std::string(sector_name(config.sector)) +
                            " coverage");
        }
    } else {
        std::sort(regions.begin(), regions.end());
        regions.erase(std::unique(regions.begin(), regions.end()), regions.end());
        for (const auto& region : regions) {
            if (panel.coverage.find({region, config.sector}) == panel.coverage.end()) {
                throw Error(ErrorCode::RegionNotCovered,
                            region + " has no " + std::string(sector_name(config.sector)) +
                                " coverage");
            }
        }
    }

    int from;
    int to;
    if (config.year_from && config.year_to) {
        from = *config.year_from;
        to = *config.year_to;
    } else {
        // Default to the widest window every selected region can serve.
        int latest_first = std::numeric_limits<int>::min();
        int earliest_last = std::numeric_limits<int>::max();
        for (const auto& region : regions) {
            const auto& segments = panel.coverage.at({region, config.sector});
            latest_first = std::max(latest_first, segments.front().first);
            earliest_last = std::min(earliest_last, segments.back().last);
        }
        from = config.year_from.value_or(latest_first);
        to = config.year_to.value_or(earliest_last);
    }
    if (to <= from) {
        throw Error(ErrorCode::WindowOutsideCoverage,
                    "window " + std::to_string(from) + "-" + std::to_string(to) +
                        " is shorter than one year");
    }
    if (config.mode == ChainingMode::Stage) {
        check_stage_partition(config.stages, from, to);
    }

    std::vector<RegionSeries> result;
    result.reserve(regions.size());
    for (const auto& region : regions) {
        const auto& segments = panel.coverage.at({region, config.sector});
        if (!segment_covers(segments, from, to)) {
            throw Error(ErrorCode::WindowOutsideCoverage,
                        region + " does not cover " + std::to_string(from) + "-" +
                            std::to_string(to) + " contiguously");
        }
        RegionSeries series;
        series.region = region;
        for (int year = from; year <= to; ++year) {
            const auto& macro = panel.macro.at({region, year});
            const auto& enduses = panel.enduse.at({region, year, config.sector});
            series.years.push_back(year);
            series.macro.push_back(macro);
            series.states.push_back(make_state(derive_factors(macro, enduses), config.delta));
        }
        result.push_back(std::move(series));
    }
    return result;
}

std::vector<ContributionRow> run_decompose(const PanelDataset& panel, const RunConfig& config) {
    std::vector<ContributionRow> rows;
    for (const auto& series : select_series(panel, config)) {
        for (const auto& cs : decompose_series(series, config)) {
            append_rows(rows, cs);
        }
    }
    return rows;
}

std::vector<MetricsRow> run_assess(const PanelDataset& panel, const RunConfig& config) {
    std::vector<MetricsRow> rows;
    for (const auto& series : select_series(panel, config)) {
        double cumulative_dc = 0.0;
        double cumulative_emissions = 0.0;
        for (const auto& cs : decompose_series(series, config)) {
            const WindowMetrics m = window_metrics(series, cs);
            cumulative_dc += m.dc;
            cumulative_emissions += m.emissions;

            MetricsRow row;
            row.region = series.region;
            row.sector = config.sector;
            row.year_from = m.window.year_from;
            row.year_to = m.window.year_to;
            row.dci = m.dci;
            row.dc_kg = m.dc;
            row.cumulative_dc_kg = cumulative_dc;
            row.efficiency =
                cumulative_emissions > 0.0 ? cumulative_dc / cumulative_emissions : 0.0;
            row.per_capita_dc_kg = m.per_capita;
            row.annual_decline_rate = m.decline_rate;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<RankRow> run_rank(const PanelDataset& panel, const RunConfig& config,
                              const std::vector<RankScale>& scales, std::size_t top_n) {
    // Ranking always uses annual windows over the selection.
    RunConfig annual = config;
    annual.mode = ChainingMode::Annual;

    std::map<std::string, double> total;
    std::map<std::string, double> intensity;
    std::map<std::string, double> per_capita;
    for (const auto& series : select_series(panel, annual)) {
        double dc_sum = 0.0;
        double dci_sum = 0.0;
        double pc_sum = 0.0;
        std::size_t count = 0;
        for (const auto& cs : decompose_series(series, annual)) {
            const WindowMetrics m = window_metrics(series, cs);
            dc_sum += m.dc;
            dci_sum += m.dci;
            pc_sum += m.per_capita;
            ++count;
        }
        total[series.region] = dc_sum / count;
        intensity[series.region] = dci_sum / count;
        per_capita[series.region] = pc_sum / count;
    }

    std::vector<RankRow> rows;
    auto emit = [&](RankScale scale, const char* name,
                    const std::map<std::string, double>& values) {
        if (std::find(scales.begin(), scales.end(), scale) == scales.end()) {
            return;
        }
        int rank = 0;
        for (const auto& [region, value] : rank_regions(values, top_n)) {
            rows.push_back({name, ++rank, region, value});
        }
    };
    emit(RankScale::Total, "total", total);
    emit(RankScale::Intensity, "intensity", intensity);
    emit(RankScale::PerCapita, "per_capita", per_capita);
    return rows;
}

} // namespace opcarb
