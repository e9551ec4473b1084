// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "socbench/audit.hpp"
#include "socbench/cli.hpp"
#include "socbench/synthgen.hpp"

namespace fs = std::filesystem;
using namespace socbench;
using nlohmann::json;
using taxonomy::Category;

namespace {

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

struct Cli {
    int code;
    std::string out;
    std::string err;
};

Cli cli_run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json report_of(const Cli& r) {
    require(r.code == 0, "command failed: " + r.err);
    return json::parse(r.out).at("report");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Workspace {
public:
    Workspace() {
        std::random_device rd;
        root_ = fs::temp_directory_path() / ("socbench-acceptance-" + std::to_string(rd()));
        fs::create_directories(root_);
    }
    ~Workspace() {
        std::error_code ec;
        fs::remove_all(root_, ec);
    }
    fs::path operator/(const std::string& name) const { return root_ / name; }

private:
    fs::path root_;
};

struct Fixture {
    std::string dir, gt, preds, meta;
};

Fixture make_fixture(const Workspace& ws, const std::string& name) {
    Fixture f;
    f.dir = (ws / name).string();
    const auto r = cli_run({"fixture", "--out", f.dir});
    require(r.code == 0, "fixture failed: " + r.err);
    f.gt = (fs::path(f.dir) / "ground_truth.json").string();
    f.preds = (fs::path(f.dir) / "predictions.json").string();
    f.meta = (fs::path(f.dir) / "run_metadata.json").string();
    return f;
}

// Reference Wilson bounds found by bisection on the score-test inequality
// (phat - p)^2 <= z^2 p (1 - p) / n, with z by bisection on erfc.
std::pair<double, double> reference_wilson(double k, double n, double confidence) {
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::sqrt(2.0)) < 0.5 + confidence / 2 ? lo : hi) = mid;
    }
    const double z = 0.5 * (lo + hi);
    const double phat = k / n;
    auto inside = [&](double p) { return (phat - p) * (phat - p) <= z * z * p * (1 - p) / n; };
    auto edge = [&](double in, double out) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (in + out);
            (inside(mid) ? in : out) = mid;
        }
        return in;
    };
    return {k == 0 ? 0.0 : edge(phat, 0.0), k == n ? 1.0 : edge(phat, 1.0)};
}

void ac1_headline(const Workspace& ws) {
    const auto f = make_fixture(ws, "ac1");
    const auto fuzzy = report_of(cli_run({"evaluate", "--predictions", f.preds, "--ground-truth",
                                          f.gt, "--parser", "fuzzy"}));
    const auto strict = report_of(cli_run({"evaluate", "--predictions", f.preds, "--ground-truth",
                                           f.gt, "--parser", "strict"}));
    const auto cmp = report_of(cli_run({"compare", "--predictions", f.preds, "--ground-truth", f.gt}));
    require(fuzzy["micro_threat_accuracy"].get<double>() == 0.76, "fuzzy threat accuracy != 0.76");
    require(strict["micro_threat_accuracy"].get<double>() == 0.0, "strict threat accuracy != 0.00");
    require(fuzzy["severity_accuracy"].get<double>() == 0.58, "fuzzy severity accuracy != 0.58");
    require(strict["severity_accuracy"].get<double>() == 0.58, "strict severity accuracy != 0.58");
    require(cmp["threat_delta_pp"].get<double>() == 76.0, "threat_delta_pp != 76.0");
    require(cmp["severity_delta_pp"].get<double>() == 0.0, "severity_delta_pp != 0.0");
}

void ac2_per_class(const Workspace& ws) {
    const auto f = make_fixture(ws, "ac2");
    const auto rep = report_of(cli_run({"evaluate", "--predictions", f.preds, "--ground-truth", f.gt}));
    const std::map<std::string, Category> zero = {{"SB-06", Category::BruteForce},
                                                  {"SB-07", Category::CredentialStuffing},
                                                  {"SB-08", Category::Reconnaissance}};
    std::size_t perfect = 0;
    require(rep["per_class"].size() == 13, "expected 13 classes");
    for (const auto& c : rep["per_class"]) {
        const auto id = c["category"].get<std::string>();
        const double acc = c["accuracy"].get<double>();
        if (zero.contains(id)) {
            require(acc == 0.0 && c["n"].get<int>() == 4, id + " should be 0/4");
        } else {
            require(acc == 1.0, id + " should be at 1.0");
            ++perfect;
        }
    }
    require(perfect == 10, "expected ten classes at 1.0");
    require(std::abs(rep["macro_threat_accuracy"].get<double>() - 10.0 / 13.0) <= 1e-12,
            "macro accuracy != 10/13");
}

void ac3_variant_completeness() {
    const auto& table = taxonomy::KeywordTable::builtin();
    std::size_t cases = 0, ok = 0;
    for (const auto& style : synthgen::style_grid()) {
        for (auto c : taxonomy::kAllCategories) {
            for (auto sev : taxonomy::kAllSeverities) {
                const scoring::GroundTruthRecord t{"x", c, sev,
                                                   std::string(synthgen::representative_technique(c))};
                const auto rec = scoring::score_record(t, synthgen::render_output(t, style, cases),
                                                       extraction::ParserKind::Fuzzy, table);
                ok += rec.threat_correct && rec.severity_correct && rec.mitre_extracted();
                ++cases;
            }
        }
    }
    require(cases == 780, "expected 780 cases");
    require(ok == cases, std::to_string(cases - ok) + " of 780 cases not recovered");
}

void ac4_strict_asymmetry() {
    using synthgen::KeyCase;
    std::size_t cases = 0;
    for (const auto& style : synthgen::style_grid()) {
        const bool underscored = style.key_case == KeyCase::UpperSnake ||
                                 style.key_case == KeyCase::LowerSnake ||
                                 style.key_case == KeyCase::TitleUnderscore;
        for (auto c : taxonomy::kAllCategories) {
            for (auto sev : taxonomy::kAllSeverities) {
                const scoring::GroundTruthRecord t{"x", c, sev, std::nullopt};
                const auto raw = synthgen::render_output(t, style, cases++);
                const auto fields = extraction::strict_extract(raw);
                require(fields.threat.has_value() == underscored,
                        "strict threat recovery wrong for " +
                            std::string(synthgen::key_case_name(style.key_case)));
                if (style.separator == synthgen::Separator::Colon) {
                    require(fields.severity.has_value() &&
                                taxonomy::normalize_severity(*fields.severity) == sev,
                            "strict missed a colon severity line");
                }
            }
        }
    }
}

void ac5_wilson() {
    // The reference write-up gives [0%, 60%] for 0/4 and calls it Wilson;
    // 60.2% is the Clopper-Pearson bound. Wilson itself gives 49.0%.
    const auto a = scoring::wilson_interval(0, 4, 0.95);
    const auto ra = reference_wilson(0, 4, 0.95);
    require(std::abs(a.high - 0.4899) <= 0.001, "0/4 upper bound not 0.4899");
    require(std::abs(a.high - ra.second) <= 1e-9 && a.low == ra.first, "0/4 disagrees with reference");
    require(a.high < 0.60, "0/4 upper bound should not be the Clopper-Pearson 0.60");

    const auto b = scoring::wilson_interval(10, 20, 0.95);
    const auto rb = reference_wilson(10, 20, 0.95);
    require(std::abs(b.low - 0.299) <= 0.002 && std::abs(b.high - 0.701) <= 0.002,
            "10/20 not (0.299, 0.701)");
    require(std::abs(b.low - rb.first) <= 1e-9 && std::abs(b.high - rb.second) <= 1e-9,
            "10/20 disagrees with reference");
}

void ac6_partition() {
    const auto& table = taxonomy::KeywordTable::builtin();
    std::size_t attributed = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto ds = synthgen::random_dataset(seed, 20 + seed % 41);
        const auto strict = scoring::score_predictions(ds.truth, ds.predictions,
                                                       extraction::ParserKind::Strict, table);
        const auto fuzzy = scoring::score_predictions(ds.truth, ds.predictions,
                                                      extraction::ParserKind::Fuzzy, table);
        for (const auto* recs : {&strict, &fuzzy}) {
            std::map<audit::FailureKind, std::size_t> kinds;
            std::size_t correct = 0;
            for (const auto& r : *recs) {
                if (r.threat_correct) ++correct;
                else ++kinds[audit::classify_failure(r)];
            }
            std::size_t sum = correct;
            for (const auto& [k, n] : kinds) sum += n;
            require(sum == recs->size(), "partition broken at seed " + std::to_string(seed));
        }
        for (std::size_t i = 0; i < strict.size(); ++i) {
            if (fuzzy[i].threat_correct && !strict[i].threat_correct) {
                require(audit::classify_failure(strict[i]) == audit::FailureKind::ExtractionFailure,
                        "strict failure not ExtractionFailure: " + strict[i].id());
                ++attributed;
            }
        }
    }
    require(attributed > 0, "no fuzzy-correct/strict-failed records generated");
}

void ac7_compliance(const Workspace& ws) {
    const auto f = make_fixture(ws, "ac7");
    auto r = cli_run({"check", "--ground-truth", f.gt, "--metadata", f.meta});
    require(r.code == cli::kExitCheckFailed, "reference distribution should fail");
    const auto rep = json::parse(r.out)["report"];
    require(!rep["r1"]["pass"].get<bool>() && rep["r1"]["shortfalls"].size() == 13,
            "expected 13 R1 shortfalls");

    json gt = json::array();
    int i = 0;
    for (auto c : taxonomy::kAllCategories) {
        for (int k = 0; k < 20; ++k) {
            gt.push_back({{"id", "c" + std::to_string(i++)},
                          {"category", taxonomy::category_id(c)},
                          {"severity", "High"}});
        }
    }
    const json meta = {{"max_new_tokens", 120},
                       {"temperature", 0.0},
                       {"do_sample", false},
                       {"parser_type", "fuzzy"},
                       {"normalization_version", taxonomy::KeywordTable::kBuiltinVersion},
                       {"post_processing", {"loop_truncation"}}};
    std::ofstream(ws / "gt260.json") << gt.dump();
    std::ofstream(ws / "meta.json") << meta.dump();
    r = cli_run({"check", "--ground-truth", (ws / "gt260.json").string(), "--metadata",
                 (ws / "meta.json").string()});
    require(r.code == 0, "13x20 set with full metadata should pass");
    const auto ok = json::parse(r.out)["report"];
    for (const char* req : {"r1", "r2", "r3", "r4"}) {
        require(ok[req]["pass"].get<bool>(), std::string(req) + " should pass");
    }
}

void ac8_determinism(const Workspace& ws) {
    const auto f = make_fixture(ws, "ac8a");
    const auto g = make_fixture(ws, "ac8b");
    for (const char* file : {"ground_truth.json", "predictions.json", "run_metadata.json"}) {
        require(slurp(fs::path(f.dir) / file) == slurp(fs::path(g.dir) / file),
                std::string("fixture not byte-identical: ") + file);
    }
    const auto report_path = (ws / "report.json").string();
    std::ofstream(report_path) << cli_run({"evaluate", "--predictions", f.preds, "--ground-truth", f.gt}).out;

    const std::vector<std::vector<std::string>> commands = {
        {"evaluate", "--predictions", f.preds, "--ground-truth", f.gt},
        {"evaluate", "--predictions", f.preds, "--ground-truth", f.gt, "--parser", "strict",
         "--format", "markdown"},
        {"evaluate", "--predictions", f.preds, "--ground-truth", f.gt, "--format", "text"},
        {"compare", "--predictions", f.preds, "--ground-truth", f.gt},
        {"compare", "--predictions", f.preds, "--ground-truth", f.gt, "--format", "markdown"},
        {"check", "--ground-truth", f.gt, "--metadata", f.meta, "--report", report_path},
        {"fuzz"},
        {"fuzz", "--samples", "7", "--seed", "3", "--format", "text"},
        {"keywords"},
    };
    for (const auto& args : commands) {
        const auto a = cli_run(args);
        const auto b = cli_run(args);
        require(a.code == b.code, "exit code differs for " + args[0]);
        std::string body_a = a.out, body_b = b.out;
        if (json::accept(a.out)) {
            const auto ja = json::parse(a.out), jb = json::parse(b.out);
            if (ja.contains("report")) {
                body_a = ja["report"].dump();
                body_b = jb["report"].dump();
            }
        }
        require(!body_a.empty() && body_a == body_b, "output differs for " + args[0]);
    }
}

}  // namespace

int main() {
    Workspace ws;
    const std::vector<std::tuple<std::string, std::string, double, std::function<void()>>> criteria = {
        {"AC1", "strict vs fuzzy headline figures", 1.0, [&] { ac1_headline(ws); }},
        {"AC2", "per-class accuracy and macro average", 1.0, [&] { ac2_per_class(ws); }},
        {"AC3", "fuzzy variant completeness (780 cases)", 5.0, ac3_variant_completeness},
        {"AC4", "strict asymmetry", 0.0, ac4_strict_asymmetry},
        {"AC5", "Wilson interval oracle", 0.0, ac5_wilson},
        {"AC6", "failure partition over 1000 random datasets", 30.0, ac6_partition},
        {"AC7", "compliance gating", 0.0, [&] { ac7_compliance(ws); }},
        {"AC8", "determinism of every command", 0.0, [&] { ac8_determinism(ws); }},
    };

    int failed = 0;
    for (const auto& [id, name, budget, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            check();
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && budget > 0 && secs >= budget) {
            ok = false;
            detail = "exceeded " + std::to_string(budget) + " s budget";
        }
        std::printf("%s %s  %-46s %8.3f s%s%s\n", ok ? "PASS" : "FAIL", id.c_str(), name.c_str(),
                    secs, detail.empty() ? "" : "  ", detail.c_str());
        failed += !ok;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
