#pragma once

#include "opcarb/assessment.hpp"
#include "opcarb/decomposition.hpp"
#include "opcarb/ingest.hpp"
#include "opcarb/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opcarb {

enum class ChainingMode {
    Annual, // consecutive-year windows
    Stage,  // end-to-end decomposition per stage window
};

enum class RankScale {
    Total,     // mean annual DC (kg)
    Intensity, // mean annual DCI (intensity units)
    PerCapita, // mean annual DC per person
};

struct RunConfig {
    Sector sector = Sector::Residential;
    std::vector<std::string> regions; // empty = every covered region
    std::optional<int> year_from;
    std::optional<int> year_to;
    ChainingMode mode = ChainingMode::Annual;
    std::vector<PeriodWindow> stages; // required in stage mode; adjacent windows share endpoints
    double delta = kDefaultZeroDelta;
};

/// Year window and state series for one region under a config; the building
/// block shared by the run_* entry points.
struct RegionSeries {
    std::string region;
    std::vector<int> years;
    std::vector<FactorState> states;
    std::vector<MacroRecord> macro;
};

/// Resolves the selection (regions, window, coverage) and derives the
/// substituted factor states per region. Throws RegionNotCovered /
/// WindowOutsideCoverage on bad selections.
std::vector<RegionSeries> select_series(const PanelDataset& panel, const RunConfig& config);

/// Stage windows like "2000-2005,2005-2010". Consecutive stages must share
/// endpoints so they chain the full window.
std::vector<PeriodWindow> parse_stage_list(const std::string& text);

std::vector<ContributionRow> run_decompose(const PanelDataset& panel, const RunConfig& config);

std::vector<MetricsRow> run_assess(const PanelDataset& panel, const RunConfig& config);

std::vector<RankRow> run_rank(const PanelDataset& panel, const RunConfig& config,
                              const std::vector<RankScale>& scales, std::size_t top_n);

} // namespace opcarb
