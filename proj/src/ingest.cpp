#include "opcarb/ingest.hpp"

#include "opcarb/csvio.hpp"
#include "opcarb/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <set>

namespace opcarb {

namespace {

constexpr std::string_view kBasisPrefix = "# basis:";

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

std::string trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(" \t");
    return std::string(text.substr(begin, end - begin + 1));
}

// Shared line-by-line scaffold for both schemas: header check, comment and
// metadata handling, per-row dispatch.
template <typename Record, typename RowParser>
ParseResult<Record> parse_csv(std::istream& in, const std::string& file_name,
                              std::string_view expected_header, RowParser parse_row) {
    ParseResult<Record> result;

    std::string line;
    int row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.rfind('#', 0) == 0) {
            if (result.basis.empty() && line.rfind(kBasisPrefix, 0) == 0) {
                result.basis = trim(line.substr(kBasisPrefix.size()));
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (line != expected_header) {
                // Distinguish unknown column names from a wrong shape.
                const auto expected = split_csv_line(expected_header);
                const auto got = split_csv_line(line);
                DiagnosticCode code = DiagnosticCode::MissingHeader;
                for (const auto& col : got) {
                    if (std::find(expected.begin(), expected.end(), col) == expected.end()) {
                        code = DiagnosticCode::UnknownColumn;
                        break;
                    }
                }
                result.diagnostics.push_back(
                    {file_name, row, code,
                     "expected header '" + std::string(expected_header) + "', got '" + line +
                         "'"});
                return result;
            }
            continue;
        }
        parse_row(line, row, result);
    }
    if (!header_seen) {
        result.diagnostics.push_back(
            {file_name, 0, DiagnosticCode::MissingHeader, "input has no header row"});
    }
    return result;
}

} // namespace

const char* diagnostic_code_name(DiagnosticCode code) {
    switch (code) {
    case DiagnosticCode::MissingHeader: return "MissingHeader";
    case DiagnosticCode::UnknownColumn: return "UnknownColumn";
    case DiagnosticCode::WrongFieldCount: return "WrongFieldCount";
    case DiagnosticCode::NonNumericField: return "NonNumericField";
    case DiagnosticCode::NonPositiveValue: return "NonPositiveValue";
    case DiagnosticCode::NegativeValue: return "NegativeValue";
    case DiagnosticCode::ServiceGdpExceedsGdp: return "ServiceGdpExceedsGdp";
    case DiagnosticCode::InvalidSector: return "InvalidSector";
    case DiagnosticCode::InvalidEndUse: return "InvalidEndUse";
    case DiagnosticCode::InvalidEndUseForSector: return "InvalidEndUseForSector";
    case DiagnosticCode::EmissionWithoutEnergy: return "EmissionWithoutEnergy";
    case DiagnosticCode::DuplicateRecord: return "DuplicateRecord";
    case DiagnosticCode::DuplicateEndUse: return "DuplicateEndUse";
    case DiagnosticCode::MissingEndUse: return "MissingEndUse";
    case DiagnosticCode::OrphanEndUse: return "OrphanEndUse";
    case DiagnosticCode::NonContiguousYears: return "NonContiguousYears";
    }
    return "UnknownDiagnostic";
}

ParseResult<MacroRecord> parse_macro_csv(std::istream& in, const std::string& file_name) {
    return parse_csv<MacroRecord>(
        in, file_name, kMacroCsvHeader,
        [&](const std::string& line, int row, ParseResult<MacroRecord>& result) {
            const auto fields = split_csv_line(line);
            if (fields.size() != 8) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::WrongFieldCount,
                                              "expected 8 fields, got " +
                                                  std::to_string(fields.size())});
                return;
            }

            MacroRecord rec;
            rec.region = fields[0];
            rec.source_row = row;

            const auto year = parse_int(fields[1]);
            if (!year) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::NonNumericField,
                                              "year '" + fields[1] + "' is not an integer"});
                return;
            }
            rec.year = *year;

            constexpr std::array<std::string_view, 6> names = {
                "population", "households", "gdp", "service_gdp", "hfc", "floor_space"};
            std::array<double, 6> values{};
            for (std::size_t i = 0; i < names.size(); ++i) {
                const auto value = parse_double(fields[i + 2]);
                if (!value) {
                    result.diagnostics.push_back(
                        {file_name, row, DiagnosticCode::NonNumericField,
                         std::string(names[i]) + " '" + fields[i + 2] + "' is not numeric"});
                    return;
                }
                if (!(*value > 0.0)) {
                    result.diagnostics.push_back(
                        {file_name, row, DiagnosticCode::NonPositiveValue,
                         std::string(names[i]) + " must be strictly positive, got " +
                             fields[i + 2]});
                    return;
                }
                values[i] = *value;
            }
            rec.population = values[0];
            rec.households = values[1];
            rec.gdp = values[2];
            rec.service_gdp = values[3];
            rec.hfc = values[4];
            rec.floor_space = values[5];

            if (rec.service_gdp > rec.gdp) {
                result.diagnostics.push_back({file_name, row,
                                              DiagnosticCode::ServiceGdpExceedsGdp,
                                              "service_gdp exceeds gdp"});
                return;
            }
            result.records.push_back(std::move(rec));
        });
}

ParseResult<EndUseRecord> parse_enduse_csv(std::istream& in, const std::string& file_name) {
    return parse_csv<EndUseRecord>(
        in, file_name, kEndUseCsvHeader,
        [&](const std::string& line, int row, ParseResult<EndUseRecord>& result) {
            const auto fields = split_csv_line(line);
            if (fields.size() != 6) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::WrongFieldCount,
                                              "expected 6 fields, got " +
                                                  std::to_string(fields.size())});
                return;
            }

            EndUseRecord rec;
            rec.region = fields[0];
            rec.source_row = row;

            const auto year = parse_int(fields[1]);
            if (!year) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::NonNumericField,
                                              "year '" + fields[1] + "' is not an integer"});
                return;
            }
            rec.year = *year;

            const auto sector = parse_sector(fields[2]);
            if (!sector) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::InvalidSector,
                                              "unknown sector '" + fields[2] + "'"});
                return;
            }
            rec.sector = *sector;

            const auto end_use = parse_end_use(fields[3]);
            if (!end_use) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::InvalidEndUse,
                                              "unknown end use '" + fields[3] + "'"});
                return;
            }
            rec.end_use = *end_use;
            if (!end_use_index(rec.sector, rec.end_use)) {
                result.diagnostics.push_back(
                    {file_name, row, DiagnosticCode::InvalidEndUseForSector,
                     "'" + fields[3] + "' is not a " + std::string(sector_name(rec.sector)) +
                         " end use"});
                return;
            }

            const auto energy = parse_double(fields[4]);
            if (!energy) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::NonNumericField,
                                              "energy_mj '" + fields[4] + "' is not numeric"});
                return;
            }
            const auto emissions = parse_double(fields[5]);
            if (!emissions) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::NonNumericField,
                                              "emissions_kgco2 '" + fields[5] +
                                                  "' is not numeric"});
                return;
            }
            if (*energy < 0.0 || *emissions < 0.0) {
                result.diagnostics.push_back({file_name, row, DiagnosticCode::NegativeValue,
                                              "energy and emissions must be nonnegative"});
                return;
            }
            if (*energy == 0.0 && *emissions > 0.0) {
                result.diagnostics.push_back({file_name, row,
                                              DiagnosticCode::EmissionWithoutEnergy,
                                              "emissions reported with zero energy"});
                return;
            }
            rec.energy_mj = *energy;
            rec.emissions_kgco2 = *emissions;
            result.records.push_back(std::move(rec));
        });
}

namespace {

template <typename Record, typename Parser>
ParseResult<Record> parse_file(const std::string& path, Parser parser) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::UnreadablePath, "cannot open '" + path + "' for reading");
    }
    return parser(in, path);
}

} // namespace

ParseResult<MacroRecord> parse_macro_csv_file(const std::string& path) {
    return parse_file<MacroRecord>(
        path, [](std::istream& in, const std::string& name) { return parse_macro_csv(in, name); });
}

ParseResult<EndUseRecord> parse_enduse_csv_file(const std::string& path) {
    return parse_file<EndUseRecord>(path, [](std::istream& in, const std::string& name) {
        return parse_enduse_csv(in, name);
    });
}

std::string serialize_macro_csv(const std::vector<MacroRecord>& records,
                                const std::string& basis) {
    std::string out;
    if (!basis.empty()) {
        out += std::string(kBasisPrefix) + " " + basis + "\n";
    }
    out += std::string(kMacroCsvHeader) + "\n";
    for (const auto& rec : records) {
        out += join_csv_line({rec.region, std::to_string(rec.year),
                              format_double(rec.population), format_double(rec.households),
                              format_double(rec.gdp), format_double(rec.service_gdp),
                              format_double(rec.hfc), format_double(rec.floor_space)});
        out += '\n';
    }
    return out;
}

std::string serialize_enduse_csv(const std::vector<EndUseRecord>& records) {
    std::string out = std::string(kEndUseCsvHeader) + "\n";
    for (const auto& rec : records) {
        out += join_csv_line({rec.region, std::to_string(rec.year),
                              std::string(sector_name(rec.sector)),
                              std::string(end_use_name(rec.end_use)),
                              format_double(rec.energy_mj),
                              format_double(rec.emissions_kgco2)});
        out += '\n';
    }
    return out;
}

PanelResult assemble_panel(const std::vector<MacroRecord>& macro_records,
                           const std::vector<EndUseRecord>& enduse_records) {
    PanelResult result;
    auto& panel = result.panel;
    auto& report = result.report;

    // Group by key first; any key with more than one record is excluded
    // entirely, which keeps the join independent of input order.
    std::map<std::pair<std::string, int>, std::vector<const MacroRecord*>> macro_by_key;
    for (const auto& rec : macro_records) {
        macro_by_key[{rec.region, rec.year}].push_back(&rec);
    }
    for (const auto& [key, recs] : macro_by_key) {
        if (recs.size() > 1) {
            report.push_back({"panel", 0, DiagnosticCode::DuplicateRecord,
                              "macro key " + key.first + "/" + std::to_string(key.second) +
                                  " appears " + std::to_string(recs.size()) +
                                  " times; all occurrences excluded"});
            continue;
        }
        panel.macro.emplace(key, *recs.front());
    }

    std::map<std::tuple<std::string, int, Sector, EndUse>, std::vector<const EndUseRecord*>>
        enduse_by_key;
    for (const auto& rec : enduse_records) {
        enduse_by_key[{rec.region, rec.year, rec.sector, rec.end_use}].push_back(&rec);
    }

    std::map<std::tuple<std::string, int, Sector>, std::vector<const EndUseRecord*>> groups;
    for (const auto& [key, recs] : enduse_by_key) {
        const auto& [region, year, sector, end_use] = key;
        if (recs.size() > 1) {
            report.push_back({"panel", 0, DiagnosticCode::DuplicateEndUse,
                              "end-use key " + region + "/" + std::to_string(year) + "/" +
                                  std::string(sector_name(sector)) + "/" +
                                  std::string(end_use_name(end_use)) + " appears " +
                                  std::to_string(recs.size()) +
                                  " times; all occurrences excluded"});
            continue;
        }
        groups[{region, year, sector}].push_back(recs.front());
    }

    for (const auto& [key, recs] : groups) {
        const auto& [region, year, sector] = key;
        const std::string key_text =
            region + "/" + std::to_string(year) + "/" + std::string(sector_name(sector));

        if (panel.macro.find({region, year}) == panel.macro.end()) {
            report.push_back({"panel", 0, DiagnosticCode::OrphanEndUse,
                              key_text + ": no macro record for this region-year; " +
                                  std::to_string(recs.size()) + " end-use records excluded"});
            continue;
        }

        const auto set = end_uses(sector);
        if (recs.size() != set.size()) {
            std::string missing;
            for (EndUse eu : set) {
                const bool present = std::any_of(recs.begin(), recs.end(), [&](const auto* r) {
                    return r->end_use == eu;
                });
                if (!present) {
                    if (!missing.empty()) {
                        missing += ", ";
                    }
                    missing += end_use_name(eu);
                }
            }
            report.push_back({"panel", 0, DiagnosticCode::MissingEndUse,
                              key_text + ": incomplete end-use set (missing " + missing + "); " +
                                  std::to_string(recs.size()) + " records excluded"});
            continue;
        }

        std::vector<EndUseRecord> ordered;
        ordered.reserve(set.size());
        for (EndUse eu : set) {
            const auto it = std::find_if(recs.begin(), recs.end(),
                                         [&](const auto* r) { return r->end_use == eu; });
            ordered.push_back(**it);
        }
        panel.enduse.emplace(key, std::move(ordered));
    }

    // Coverage: contiguous year segments per region-sector.
    std::map<std::pair<std::string, Sector>, std::set<int>> years;
    for (const auto& [key, recs] : panel.enduse) {
        const auto& [region, year, sector] = key;
        years[{region, sector}].insert(year);
    }
    for (const auto& [key, year_set] : years) {
        std::vector<YearRange>& segments = panel.coverage[key];
        for (int year : year_set) {
            if (!segments.empty() && segments.back().last == year - 1) {
                segments.back().last = year;
            } else {
                segments.push_back({year, year});
            }
        }
        if (segments.size() > 1) {
            std::string text;
            for (const auto& seg : segments) {
                if (!text.empty()) {
                    text += ", ";
                }
                text += std::to_string(seg.first) + "-" + std::to_string(seg.last);
            }
            report.push_back({"panel", 0, DiagnosticCode::NonContiguousYears,
                              key.first + "/" + std::string(sector_name(key.second)) +
                                  ": years split into segments " + text});
        }
    }

    return result;
}

std::string render_report_text(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const auto& diag : diagnostics) {
        out += diag.file + ":" + std::to_string(diag.row) + ": " +
               diagnostic_code_name(diag.code) + ": " + diag.message + "\n";
    }
    return out;
}

std::string render_report_json(const std::vector<Diagnostic>& diagnostics) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "validation";
    doc["diagnostics"] = nlohmann::ordered_json::array();
    for (const auto& diag : diagnostics) {
        doc["diagnostics"].push_back({{"row", diag.row},
                                      {"file", diag.file},
                                      {"code", diagnostic_code_name(diag.code)},
                                      {"message", diag.message}});
    }
    return doc.dump(2) + "\n";
}

} // namespace opcarb
