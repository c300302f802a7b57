#pragma once

#include "opcarb/enduse.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opcarb {

inline constexpr int kOutputSchemaVersion = 1;

inline constexpr std::string_view kContributionCsvHeader =
    "region,sector,year_from,year_to,factor,end_use,contribution,share_of_delta,residual";
inline constexpr std::string_view kMetricsCsvHeader =
    "region,sector,year_from,year_to,dci,dc_kg,cumulative_dc_kg,efficiency,per_capita_dc_kg,"
    "annual_decline_rate";
inline constexpr std::string_view kRankCsvHeader = "scale,rank,region,value";

/// One row of the contribution table. Aggregate factor rows leave `end_use`
/// empty; per-end-use detail rows name it. `share_of_delta` is empty when the
/// window's total intensity change is zero.
struct ContributionRow {
    std::string region;
    Sector sector = Sector::Residential;
    int year_from = 0;
    int year_to = 0;
    std::string factor;
    std::string end_use;
    double contribution = 0.0;
    std::optional<double> share_of_delta;
    double residual = 0.0;
};

struct MetricsRow {
    std::string region;
    Sector sector = Sector::Residential;
    int year_from = 0;
    int year_to = 0;
    double dci = 0.0;
    double dc_kg = 0.0;
    double cumulative_dc_kg = 0.0;
    double efficiency = 0.0;
    double per_capita_dc_kg = 0.0;
    double annual_decline_rate = 0.0;
};

struct RankRow {
    std::string scale; // total | intensity | per_capita
    int rank = 0;
    std::string region;
    double value = 0.0;
};

std::string contributions_to_csv(const std::vector<ContributionRow>& rows);
std::string metrics_to_csv(const std::vector<MetricsRow>& rows);
std::string rank_to_csv(const std::vector<RankRow>& rows);

std::string contributions_to_json(const std::vector<ContributionRow>& rows);
std::string metrics_to_json(const std::vector<MetricsRow>& rows);
std::string rank_to_json(const std::vector<RankRow>& rows);

std::vector<ContributionRow> contributions_from_csv(const std::string& text);
std::vector<MetricsRow> metrics_from_csv(const std::string& text);
std::vector<RankRow> rank_from_csv(const std::string& text);

std::vector<ContributionRow> contributions_from_json(const std::string& text);
std::vector<MetricsRow> metrics_from_json(const std::string& text);
std::vector<RankRow> rank_from_json(const std::string& text);

enum class TableKind {
    Contributions,
    Metrics,
    Rank,
};

/// Identifies an exported table by its CSV header line or JSON "kind" field.
std::optional<TableKind> detect_table_kind(const std::string& text);

} // namespace opcarb
