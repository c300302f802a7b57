#pragma once

#include "opcarb/records.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace opcarb {

inline constexpr std::string_view kMacroCsvHeader =
    "region,year,population,households,gdp,service_gdp,hfc,floor_space";
inline constexpr std::string_view kEndUseCsvHeader =
    "region,year,sector,end_use,energy_mj,emissions_kgco2";

enum class DiagnosticCode {
    MissingHeader,
    UnknownColumn,
    WrongFieldCount,
    NonNumericField,
    NonPositiveValue,
    NegativeValue,
    ServiceGdpExceedsGdp,
    InvalidSector,
    InvalidEndUse,
    InvalidEndUseForSector,
    EmissionWithoutEnergy,
    DuplicateRecord,
    DuplicateEndUse,
    MissingEndUse,
    OrphanEndUse,
    NonContiguousYears,
};

const char* diagnostic_code_name(DiagnosticCode code);

/// One validation finding. `row` is the 1-based input line, 0 for findings
/// raised at panel level rather than on a single row.
struct Diagnostic {
    std::string file;
    int row = 0;
    DiagnosticCode code = DiagnosticCode::MissingHeader;
    std::string message;
};

template <typename Record>
struct ParseResult {
    std::vector<Record> records;
    std::vector<Diagnostic> diagnostics;
    std::string basis; // free-text monetary basis from an optional "# basis:" line
};

/// Parses the macro panel. Accepted and rejected rows partition the input;
/// every rejected row yields exactly one diagnostic. Lines starting with '#'
/// are metadata/comments.
ParseResult<MacroRecord> parse_macro_csv(std::istream& in, const std::string& file_name);
ParseResult<MacroRecord> parse_macro_csv_file(const std::string& path);

ParseResult<EndUseRecord> parse_enduse_csv(std::istream& in, const std::string& file_name);
ParseResult<EndUseRecord> parse_enduse_csv_file(const std::string& path);

/// Inverse of parsing for accepted records; numbers use shortest decimals so
/// a parse/serialize round trip is exact.
std::string serialize_macro_csv(const std::vector<MacroRecord>& records,
                                const std::string& basis = {});
std::string serialize_enduse_csv(const std::vector<EndUseRecord>& records);

struct YearRange {
    int first = 0;
    int last = 0; // inclusive

    bool operator==(const YearRange&) const = default;
};

/// Canonical joined dataset. Only complete end-use sets with a matching macro
/// record are kept; coverage lists the contiguous year segments per
/// region-sector.
struct PanelDataset {
    std::map<std::pair<std::string, int>, MacroRecord> macro;
    std::map<std::tuple<std::string, int, Sector>, std::vector<EndUseRecord>> enduse;
    std::map<std::pair<std::string, Sector>, std::vector<YearRange>> coverage;
};

struct PanelResult {
    PanelDataset panel;
    std::vector<Diagnostic> report;
};

/// Joins parsed records into a PanelDataset. Nothing is repaired silently:
/// duplicate keys, incomplete end-use sets and orphan records are excluded
/// and reported. Output is independent of input record order.
PanelResult assemble_panel(const std::vector<MacroRecord>& macro_records,
                           const std::vector<EndUseRecord>& enduse_records);

std::string render_report_text(const std::vector<Diagnostic>& diagnostics);
std::string render_report_json(const std::vector<Diagnostic>& diagnostics);

} // namespace opcarb
