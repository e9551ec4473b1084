#include "socbench/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "socbench/audit.hpp"
#include "socbench/error.hpp"
#include "socbench/io.hpp"
#include "socbench/render.hpp"
#include "socbench/synthgen.hpp"

namespace socbench::cli {
namespace {

namespace fs = std::filesystem;
using extraction::ParserKind;
using io::json;

const std::map<std::string, ParserKind> kParserNames = {{"strict", ParserKind::Strict},
                                                        {"fuzzy", ParserKind::Fuzzy}};
const std::map<std::string, render::Format> kFormatNames = {
    {"json", render::Format::Json},
    {"markdown", render::Format::Markdown},
    {"text", render::Format::Text}};

struct Options {
    std::string predictions;
    std::string ground_truth;
    std::string metadata;
    std::string report;
    std::string keywords;
    std::string out_dir = "fixtures/paper_n50";
    ParserKind parser = ParserKind::Fuzzy;
    render::Format format = render::Format::Json;
    double confidence = 0.95;
    std::size_t samples = 50;
    std::uint64_t seed = 0;
};

// UTC, second resolution. SOURCE_DATE_EPOCH pins it for reproducible output.
std::string timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// The report body is stable across runs; the timestamp lives beside it.
void emit_json(std::ostream& out, json body) {
    json envelope;
    envelope["generated_at"] = timestamp();
    envelope["report"] = std::move(body);
    out << envelope.dump(2) << '\n';
}

template <class Report>
void emit(std::ostream& out, const Report& report, render::Format format) {
    switch (format) {
        case render::Format::Json: emit_json(out, io::to_json(report)); break;
        case render::Format::Markdown: out << render::markdown(report); break;
        case render::Format::Text: out << render::text(report); break;
    }
}

taxonomy::KeywordTable active_table(const Options& o) {
    return o.keywords.empty() ? taxonomy::KeywordTable::builtin()
                              : taxonomy::KeywordTable::load(o.keywords);
}

struct Inputs {
    std::vector<scoring::GroundTruthRecord> truth;
    std::vector<scoring::Prediction> predictions;
};

Inputs load_inputs(const Options& o) {
    Inputs in{io::load_ground_truth(o.ground_truth), io::load_predictions(o.predictions)};
    if (in.predictions.empty() || in.truth.empty()) throw InputError("empty dataset");
    // Fail early with the full list of unmatched ids.
    scoring::join_by_id(in.truth, in.predictions);
    return in;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
    const auto table = active_table(o);
    const auto in = load_inputs(o);
    const auto records = scoring::score_predictions(in.truth, in.predictions, o.parser, table);
    auto report = audit::evaluate(records, {o.confidence, table.version()});

    if (!o.metadata.empty()) {
        auto meta = io::load_metadata(o.metadata);
        if (meta.parser_type && *meta.parser_type != o.parser) {
            throw InputError("metadata parser_type \"" +
                             std::string(extraction::parser_name(*meta.parser_type)) +
                             "\" disagrees with --parser " +
                             std::string(extraction::parser_name(o.parser)));
        }
        if (meta.normalization_version && *meta.normalization_version != table.version()) {
            throw InputError("metadata normalization_version \"" + *meta.normalization_version +
                             "\" does not match keyword table \"" + table.version() + "\"");
        }
        meta.parser_type = o.parser;
        meta.normalization_version = table.version();
        report.metadata = std::move(meta);
    }
    emit(out, report, o.format);
    return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
    const auto table = active_table(o);
    const auto in = load_inputs(o);
    emit(out, audit::compare_parsers(in.truth, in.predictions, table, {o.confidence, table.version()}),
         o.format);
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    const auto truth = io::load_ground_truth(o.ground_truth);
    const auto meta = io::load_metadata(o.metadata);
    std::optional<scoring::ScoreReport> scored;
    if (!o.report.empty()) scored = io::score_report_from_json(io::read_json_file(o.report));

    const auto result =
        audit::check_compliance(truth, meta, o.parser, scored ? &*scored : nullptr);
    emit(out, result, o.format);
    return result.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_fixture(const Options& o, std::ostream& out) {
    const fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());

    const auto ds = synthgen::build_paper_fixture();
    io::write_json_file(dir / "ground_truth.json", io::ground_truth_to_json(ds.truth));
    io::write_json_file(dir / "predictions.json", io::predictions_to_json(ds.predictions));
    io::write_json_file(dir / "run_metadata.json",
                        io::metadata_to_json(synthgen::paper_fixture_metadata()));
    out << "wrote " << ds.truth.size() << " records to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
    const auto recall = synthgen::measure_grid_recall(o.samples, o.seed, active_table(o));
    emit(out, recall, o.format);
    const bool complete = recall.fuzzy_recall == 1.0 && recall.fuzzy_normalization_accuracy == 1.0;
    return complete ? kExitOk : kExitCheckFailed;
}

int cmd_keywords(const Options& o, std::ostream& out) {
    out << active_table(o).to_json().dump(2) << '\n';
    return kExitOk;
}

void add_format(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format: json, markdown or text")
        ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case));
}

void add_keywords(CLI::App* cmd, Options& o) {
    cmd->add_option("--keywords", o.keywords, "Keyword table JSON overriding the built-in table")
        ->check(CLI::ExistingFile);
}

void add_scoring_inputs(CLI::App* cmd, Options& o) {
    cmd->add_option("--predictions", o.predictions, "Predictions JSON [{id, raw_output}]")
        ->required();
    cmd->add_option("--ground-truth,--ground_truth", o.ground_truth,
                    "Ground truth JSON [{id, category, severity, mitre_technique?}]")
        ->required();
    cmd->add_option("--confidence", o.confidence, "Wilson interval confidence level")
        ->capture_default_str();
    add_format(cmd, o);
    add_keywords(cmd, o);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"socbench: parser audit and SOC-Bench scoring for LLM security-log triage",
                 "socbench"};
    app.require_subcommand(1, 1);

    auto* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
    add_scoring_inputs(evaluate, o);
    evaluate->add_option("--parser", o.parser, "Field extractor: fuzzy (default) or strict")
        ->transform(CLI::CheckedTransformer(kParserNames, CLI::ignore_case));
    evaluate->add_option("--metadata", o.metadata, "Run metadata JSON embedded in the report");

    auto* compare = app.add_subcommand("compare", "Score the same outputs with both parsers");
    add_scoring_inputs(compare, o);

    auto* check = app.add_subcommand("check", "Check protocol requirements R1-R4");
    check->add_option("--ground-truth,--ground_truth", o.ground_truth, "Ground truth JSON")
        ->required();
    check->add_option("--metadata", o.metadata, "Run metadata JSON")->required();
    check->add_option("--primary-parser", o.parser, "Parser behind the headline figure")
        ->transform(CLI::CheckedTransformer(kParserNames, CLI::ignore_case));
    check->add_option("--report", o.report, "Score report from `evaluate` (enables the R3 check)");
    add_format(check, o);

    auto* fixture = app.add_subcommand("fixture", "Write the 50-record reference fixture");
    fixture->add_option("--out", o.out_dir, "Output directory")->capture_default_str();

    auto* fuzz = app.add_subcommand("fuzz", "Measure extraction recall over the format-style grid");
    fuzz->add_option("--samples", o.samples, "Samples per style")->capture_default_str();
    fuzz->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    add_format(fuzz, o);
    add_keywords(fuzz, o);

    auto* keywords = app.add_subcommand("keywords", "Print the active keyword table");
    add_keywords(keywords, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*evaluate) return cmd_evaluate(o, out);
        if (*compare) return cmd_compare(o, out);
        if (*check) return cmd_check(o, out);
        if (*fixture) return cmd_fixture(o, out);
        if (*fuzz) return cmd_fuzz(o, out);
        if (*keywords) return cmd_keywords(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace socbench::cli
