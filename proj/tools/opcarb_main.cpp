#include "opcarb/csvio.hpp"
#include "opcarb/errors.hpp"
#include "opcarb/ingest.hpp"
#include "opcarb/pipeline.hpp"
#include "opcarb/report.hpp"
#include "opcarb/synthetic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace opcarb;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitIoOrUsage = 2;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::UnwritablePath, "cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw Error(ErrorCode::UnwritablePath, "failed while writing '" + path + "'");
    }
}

std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::UnreadablePath, "cannot open '" + path + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct PanelOptions {
    std::string macro_path;
    std::string enduse_path;
};

struct RunOptions {
    std::string sector = "residential";
    std::vector<std::string> regions;
    int year_from = -1;
    int year_to = -1;
    std::string mode = "annual";
    std::string stages;
    double delta = kDefaultZeroDelta;
    std::string format = "csv";
    std::string out_path;
};

void add_panel_options(CLI::App* cmd, PanelOptions& opts) {
    cmd->add_option("macro", opts.macro_path, "macro panel CSV")->required();
    cmd->add_option("enduse", opts.enduse_path, "end-use panel CSV")->required();
}

void add_run_options(CLI::App* cmd, RunOptions& opts) {
    cmd->add_option("--sector", opts.sector, "residential or commercial")
        ->check(CLI::IsMember({"residential", "commercial"}))
        ->required();
    cmd->add_option("--region", opts.regions, "region filter, repeatable (default: all)");
    cmd->add_option("--from", opts.year_from, "window start year");
    cmd->add_option("--to", opts.year_to, "window end year");
    cmd->add_option("--mode", opts.mode, "annual or stage chaining")
        ->check(CLI::IsMember({"annual", "stage"}));
    cmd->add_option("--stages", opts.stages,
                    "stage windows for --mode stage, e.g. 2000-2005,2005-2010");
    cmd->add_option("--delta", opts.delta, "zero-substitution constant");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
}

RunConfig make_config(const RunOptions& opts) {
    RunConfig config;
    config.sector = *parse_sector(opts.sector);
    config.regions = opts.regions;
    if (opts.year_from >= 0) {
        config.year_from = opts.year_from;
    }
    if (opts.year_to >= 0) {
        config.year_to = opts.year_to;
    }
    config.mode = opts.mode == "stage" ? ChainingMode::Stage : ChainingMode::Annual;
    if (!opts.stages.empty()) {
        config.stages = parse_stage_list(opts.stages);
    }
    config.delta = opts.delta;
    return config;
}

PanelDataset load_panel(const PanelOptions& opts) {
    const auto macro = parse_macro_csv_file(opts.macro_path);
    const auto enduse = parse_enduse_csv_file(opts.enduse_path);
    auto assembled = assemble_panel(macro.records, enduse.records);

    // Run metadata goes to stderr; data streams stay clean.
    const std::size_t findings = macro.diagnostics.size() + enduse.diagnostics.size() +
                                 assembled.report.size();
    if (findings > 0) {
        std::cerr << "note: " << findings
                  << " validation finding(s); run `opcarb validate` for the report\n";
    }
    return std::move(assembled.panel);
}

int cmd_validate(const PanelOptions& opts, const std::string& json_out) {
    const auto macro = parse_macro_csv_file(opts.macro_path);
    const auto enduse = parse_enduse_csv_file(opts.enduse_path);
    const auto assembled = assemble_panel(macro.records, enduse.records);

    std::vector<Diagnostic> all;
    all.insert(all.end(), macro.diagnostics.begin(), macro.diagnostics.end());
    all.insert(all.end(), enduse.diagnostics.begin(), enduse.diagnostics.end());
    all.insert(all.end(), assembled.report.begin(), assembled.report.end());

    std::cout << render_report_text(all);
    if (!json_out.empty()) {
        write_output(json_out, render_report_json(all));
    }
    std::cerr << "validate: " << macro.records.size() << " macro record(s), "
              << enduse.records.size() << " end-use record(s), " << all.size()
              << " finding(s)\n";
    return all.empty() ? kExitOk : kExitFindings;
}

int cmd_export(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
    const std::string text = read_input(in_path);
    const auto kind = detect_table_kind(text);
    if (!kind) {
        throw Error(ErrorCode::InvalidArgument,
                    "'" + in_path + "' is not a recognized opcarb table");
    }
    const bool from_json = !text.empty() && text[text.find_first_not_of(" \t\r\n")] == '{';
    const bool to_json = format == "json";

    std::string out;
    switch (*kind) {
    case TableKind::Contributions: {
        const auto rows = from_json ? contributions_from_json(text) : contributions_from_csv(text);
        out = to_json ? contributions_to_json(rows) : contributions_to_csv(rows);
        break;
    }
    case TableKind::Metrics: {
        const auto rows = from_json ? metrics_from_json(text) : metrics_from_csv(text);
        out = to_json ? metrics_to_json(rows) : metrics_to_csv(rows);
        break;
    }
    case TableKind::Rank: {
        const auto rows = from_json ? rank_from_json(text) : rank_from_csv(text);
        out = to_json ? rank_to_json(rows) : rank_to_csv(rows);
        break;
    }
    }
    write_output(out_path, out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operational carbon decomposition toolkit for building panels"};
    app.require_subcommand(1);

    PanelOptions validate_panel;
    std::string validate_json_out;
    auto* validate = app.add_subcommand("validate", "check panel files and print findings");
    add_panel_options(validate, validate_panel);
    validate->add_option("--json-out", validate_json_out, "also write the report as JSON");

    PanelOptions decompose_panel;
    RunOptions decompose_opts;
    auto* decompose =
        app.add_subcommand("decompose", "per-factor contributions to intensity change");
    add_panel_options(decompose, decompose_panel);
    add_run_options(decompose, decompose_opts);

    PanelOptions assess_panel;
    RunOptions assess_opts;
    auto* assess = app.add_subcommand("assess", "decarbonization metrics per window");
    add_panel_options(assess, assess_panel);
    add_run_options(assess, assess_opts);

    PanelOptions rank_panel;
    RunOptions rank_opts;
    std::string rank_metric = "all";
    std::size_t rank_top = 10;
    auto* rank = app.add_subcommand("rank", "top regions by decarbonization scale");
    add_panel_options(rank, rank_panel);
    add_run_options(rank, rank_opts);
    rank->add_option("--metric", rank_metric, "total, intensity, per_capita or all")
        ->check(CLI::IsMember({"total", "intensity", "per_capita", "all"}));
    rank->add_option("--top", rank_top, "number of regions per scale");

    std::string export_in;
    std::string export_format = "csv";
    std::string export_out;
    auto* export_cmd = app.add_subcommand("export", "re-serialize an exported table");
    export_cmd->add_option("--in", export_in, "previously exported CSV or JSON table")
        ->required();
    export_cmd->add_option("--format", export_format, "target format")
        ->check(CLI::IsMember({"csv", "json"}));
    export_cmd->add_option("--out", export_out, "output path (default: stdout)");

    SyntheticSpec fixture_spec;
    std::string fixture_macro;
    std::string fixture_enduse;
    std::string fixture_basis;
    auto* fixture = app.add_subcommand("gen-fixture", "write a synthetic panel");
    fixture->add_option("--out-macro", fixture_macro, "macro CSV path")->required();
    fixture->add_option("--out-enduse", fixture_enduse, "end-use CSV path")->required();
    fixture->add_option("--regions", fixture_spec.regions, "number of regions");
    fixture->add_option("--years", fixture_spec.years, "number of years");
    fixture->add_option("--start-year", fixture_spec.start_year, "first year");
    fixture->add_option("--seed", fixture_spec.seed, "generator seed");
    fixture->add_option("--basis", fixture_basis, "monetary basis metadata line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitIoOrUsage;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(validate_panel, validate_json_out);
        }
        if (decompose->parsed()) {
            const auto panel = load_panel(decompose_panel);
            const auto rows = run_decompose(panel, make_config(decompose_opts));
            write_output(decompose_opts.out_path, decompose_opts.format == "json"
                                                      ? contributions_to_json(rows)
                                                      : contributions_to_csv(rows));
            return kExitOk;
        }
        if (assess->parsed()) {
            const auto panel = load_panel(assess_panel);
            const auto rows = run_assess(panel, make_config(assess_opts));
            write_output(assess_opts.out_path, assess_opts.format == "json"
                                                   ? metrics_to_json(rows)
                                                   : metrics_to_csv(rows));
            return kExitOk;
        }
        if (rank->parsed()) {
            const auto panel = load_panel(rank_panel);
            std::vector<RankScale> scales;
            if (rank_metric == "all" || rank_metric == "total") {
                scales.push_back(RankScale::Total);
            }
            if (rank_metric == "all" || rank_metric == "intensity") {
                scales.push_back(RankScale::Intensity);
            }
            if (rank_metric == "all" || rank_metric == "per_capita") {
                scales.push_back(RankScale::PerCapita);
            }
            const auto rows = run_rank(panel, make_config(rank_opts), scales, rank_top);
            write_output(rank_opts.out_path,
                         rank_opts.format == "json" ? rank_to_json(rows) : rank_to_csv(rows));
            return kExitOk;
        }
        if (export_cmd->parsed()) {
            return cmd_export(export_in, export_format, export_out);
        }
        if (fixture->parsed()) {
            const auto panel = generate_panel(fixture_spec);
            write_output(fixture_macro, serialize_macro_csv(panel.macro, fixture_basis));
            write_output(fixture_enduse, serialize_enduse_csv(panel.enduse));
            std::cerr << "gen-fixture: " << panel.macro.size() << " macro rows, "
                      << panel.enduse.size() << " end-use rows\n";
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case ErrorCode::UnreadablePath:
        case ErrorCode::UnwritablePath:
        case ErrorCode::InvalidArgument:
            return kExitIoOrUsage;
        default:
            return kExitFindings;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoOrUsage;
    }
    return kExitIoOrUsage;
}
