#include "opcarb/report.hpp"

#include "opcarb/csvio.hpp"
#include "opcarb/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace opcarb {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> data_lines(const std::string& text, std::string_view expected_header) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line != expected_header) {
                throw Error(ErrorCode::InvalidArgument,
                            "unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        lines.push_back(line);
    }
    if (!header_seen) {
        throw Error(ErrorCode::InvalidArgument, "input has no header row");
    }
    return lines;
}

double require_double(const std::string& field, std::string_view what) {
    const auto value = parse_double(field);
    if (!value) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " '" + field + "' is not numeric");
    }
    return *value;
}

int require_int(const std::string& field, std::string_view what) {
    const auto value = parse_int(field);
    if (!value) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " '" + field + "' is not an integer");
    }
    return *value;
}

Sector require_sector(const std::string& field) {
    const auto sector = parse_sector(field);
    if (!sector) {
        throw Error(ErrorCode::InvalidArgument, "unknown sector '" + field + "'");
    }
    return *sector;
}

ordered_json table_doc(std::string_view kind) {
    ordered_json doc;
    doc["schema_version"] = kOutputSchemaVersion;
    doc["kind"] = std::string(kind);
    doc["rows"] = ordered_json::array();
    return doc;
}

ordered_json parse_table_doc(const std::string& text, std::string_view kind) {
    const auto doc = ordered_json::parse(text);
    if (!doc.contains("kind") || doc["kind"] != kind) {
        throw Error(ErrorCode::InvalidArgument,
                    "JSON document is not a '" + std::string(kind) + "' table");
    }
    return doc;
}

} // namespace

std::string contributions_to_csv(const std::vector<ContributionRow>& rows) {
    std::string out = std::string(kContributionCsvHeader) + "\n";
    for (const auto& row : rows) {
        out += join_csv_line({row.region, std::string(sector_name(row.sector)),
                              std::to_string(row.year_from), std::to_string(row.year_to),
                              row.factor, row.end_use, format_double(row.contribution),
                              row.share_of_delta ? format_double(*row.share_of_delta)
                                                 : std::string(),
                              format_double(row.residual)});
        out += '\n';
    }
    return out;
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
    std::string out = std::string(kMetricsCsvHeader) + "\n";
    for (const auto& row : rows) {
        out += join_csv_line(
            {row.region, std::string(sector_name(row.sector)), std::to_string(row.year_from),
             std::to_string(row.year_to), format_double(row.dci), format_double(row.dc_kg),
             format_double(row.cumulative_dc_kg), format_double(row.efficiency),
             format_double(row.per_capita_dc_kg), format_double(row.annual_decline_rate)});
        out += '\n';
    }
    return out;
}

std::string rank_to_csv(const std::vector<RankRow>& rows) {
    std::string out = std::string(kRankCsvHeader) + "\n";
    for (const auto& row : rows) {
        out += join_csv_line(
            {row.scale, std::to_string(row.rank), row.region, format_double(row.value)});
        out += '\n';
    }
    return out;
}

std::string contributions_to_json(const std::vector<ContributionRow>& rows) {
    auto doc = table_doc("contributions");
    for (const auto& row : rows) {
        ordered_json item{{"region", row.region},
                          {"sector", std::string(sector_name(row.sector))},
                          {"year_from", row.year_from},
                          {"year_to", row.year_to},
                          {"factor", row.factor},
                          {"end_use", row.end_use},
                          {"contribution", row.contribution}};
        if (row.share_of_delta) {
            item["share_of_delta"] = *row.share_of_delta;
        } else {
            item["share_of_delta"] = nullptr;
        }
        item["residual"] = row.residual;
        doc["rows"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

std::string metrics_to_json(const std::vector<MetricsRow>& rows) {
    auto doc = table_doc("metrics");
    for (const auto& row : rows) {
        doc["rows"].push_back({{"region", row.region},
                               {"sector", std::string(sector_name(row.sector))},
                               {"year_from", row.year_from},
                               {"year_to", row.year_to},
                               {"dci", row.dci},
                               {"dc_kg", row.dc_kg},
                               {"cumulative_dc_kg", row.cumulative_dc_kg},
                               {"efficiency", row.efficiency},
                               {"per_capita_dc_kg", row.per_capita_dc_kg},
                               {"annual_decline_rate", row.annual_decline_rate}});
    }
    return doc.dump(2) + "\n";
}

std::string rank_to_json(const std::vector<RankRow>& rows) {
    auto doc = table_doc("rank");
    for (const auto& row : rows) {
        doc["rows"].push_back({{"scale", row.scale},
                               {"rank", row.rank},
                               {"region", row.region},
                               {"value", row.value}});
    }
    return doc.dump(2) + "\n";
}

std::vector<ContributionRow> contributions_from_csv(const std::string& text) {
    std::vector<ContributionRow> rows;
    for (const auto& line : data_lines(text, kContributionCsvHeader)) {
        const auto fields = split_csv_line(line);
        if (fields.size() != 9) {
            throw Error(ErrorCode::InvalidArgument,
                        "contribution row must have 9 fields: '" + line + "'");
        }
        ContributionRow row;
        row.region = fields[0];
        row.sector = require_sector(fields[1]);
        row.year_from = require_int(fields[2], "year_from");
        row.year_to = require_int(fields[3], "year_to");
        row.factor = fields[4];
        row.end_use = fields[5];
        row.contribution = require_double(fields[6], "contribution");
        if (!fields[7].empty()) {
            row.share_of_delta = require_double(fields[7], "share_of_delta");
        }
        row.residual = require_double(fields[8], "residual");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<MetricsRow> metrics_from_csv(const std::string& text) {
    std::vector<MetricsRow> rows;
    for (const auto& line : data_lines(text, kMetricsCsvHeader)) {
        const auto fields = split_csv_line(line);
        if (fields.size() != 10) {
            throw Error(ErrorCode::InvalidArgument,
                        "metrics row must have 10 fields: '" + line + "'");
        }
        MetricsRow row;
        row.region = fields[0];
        row.sector = require_sector(fields[1]);
        row.year_from = require_int(fields[2], "year_from");
        row.year_to = require_int(fields[3], "year_to");
        row.dci = require_double(fields[4], "dci");
        row.dc_kg = require_double(fields[5], "dc_kg");
        row.cumulative_dc_kg = require_double(fields[6], "cumulative_dc_kg");
        row.efficiency = require_double(fields[7], "efficiency");
        row.per_capita_dc_kg = require_double(fields[8], "per_capita_dc_kg");
        row.annual_decline_rate = require_double(fields[9], "annual_decline_rate");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RankRow> rank_from_csv(const std::string& text) {
    std::vector<RankRow> rows;
    for (const auto& line : data_lines(text, kRankCsvHeader)) {
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw Error(ErrorCode::InvalidArgument,
                        "rank row must have 4 fields: '" + line + "'");
        }
        RankRow row;
        row.scale = fields[0];
        row.rank = require_int(fields[1], "rank");
        row.region = fields[2];
        row.value = require_double(fields[3], "value");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ContributionRow> contributions_from_json(const std::string& text) {
    const auto doc = parse_table_doc(text, "contributions");
    std::vector<ContributionRow> rows;
    for (const auto& item : doc.at("rows")) {
        ContributionRow row;
        row.region = item.at("region").get<std::string>();
        row.sector = require_sector(item.at("sector").get<std::string>());
        row.year_from = item.at("year_from").get<int>();
        row.year_to = item.at("year_to").get<int>();
        row.factor = item.at("factor").get<std::string>();
        row.end_use = item.at("end_use").get<std::string>();
        row.contribution = item.at("contribution").get<double>();
        if (!item.at("share_of_delta").is_null()) {
            row.share_of_delta = item.at("share_of_delta").get<double>();
        }
        row.residual = item.at("residual").get<double>();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<MetricsRow> metrics_from_json(const std::string& text) {
    const auto doc = parse_table_doc(text, "metrics");
    std::vector<MetricsRow> rows;
    for (const auto& item : doc.at("rows")) {
        MetricsRow row;
        row.region = item.at("region").get<std::string>();
        row.sector = require_sector(item.at("sector").get<std::string>());
        row.year_from = item.at("year_from").get<int>();
        row.year_to = item.at("year_to").get<int>();
        row.dci = item.at("dci").get<double>();
        row.dc_kg = item.at("dc_kg").get<double>();
        row.cumulative_dc_kg = item.at("cumulative_dc_kg").get<double>();
        row.efficiency = item.at("efficiency").get<double>();
        row.per_capita_dc_kg = item.at("per_capita_dc_kg").get<double>();
        row.annual_decline_rate = item.at("annual_decline_rate").get<double>();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RankRow> rank_from_json(const std::string& text) {
    const auto doc = parse_table_doc(text, "rank");
    std::vector<RankRow> rows;
    for (const auto& item : doc.at("rows")) {
        RankRow row;
        row.scale = item.at("scale").get<std::string>();
        row.rank = item.at("rank").get<int>();
        row.region = item.at("region").get<std::string>();
        row.value = item.at("value").get<double>();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<TableKind> detect_table_kind(const std::string& text) {
    const auto first_non_space = text.find_first_not_of(" \t\r\n");
    if (first_non_space == std::string::npos) {
        return std::nullopt;
    }
    if (text[first_non_space] == '{') {
        const auto doc = nlohmann::json::parse(text, nullptr, false);
        if (doc.is_discarded() || !doc.contains("kind") || !doc["kind"].is_string()) {
            return std::nullopt;
        }
        const auto kind = doc["kind"].get<std::string>();
        if (kind == "contributions") {
            return TableKind::Contributions;
        }
        if (kind == "metrics") {
            return TableKind::Metrics;
        }
        if (kind == "rank") {
            return TableKind::Rank;
        }
        return std::nullopt;
    }
    const auto line_end = text.find('\n', first_non_space);
    std::string header = text.substr(first_non_space, line_end - first_non_space);
    if (!header.empty() && header.back() == '\r') {
        header.pop_back();
    }
    if (header == kContributionCsvHeader) {
        return TableKind::Contributions;
    }
    if (header == kMetricsCsvHeader) {
        return TableKind::Metrics;
    }
    if (header == kRankCsvHeader) {
        return TableKind::Rank;
    }
    return std::nullopt;
}

} // namespace opcarb
