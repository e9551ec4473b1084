#include <gtest/gtest.h>

#include <cstdlib>

#include <nlohmann/json.hpp>

#include "socbench/cli.hpp"
#include "socbench/io.hpp"
#include "test_support.hpp"

using namespace socbench;
using nlohmann::json;
using socbench::testing::run_cli;
using socbench::testing::slurp;
using socbench::testing::spit;
using socbench::testing::TempDir;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto r = run_cli({"fixture", "--out", fixture_dir().string()});
        ASSERT_EQ(r.code, 0) << r.err;
    }

    std::filesystem::path fixture_dir() const { return dir_.path() / "paper_n50"; }
    std::string gt() const { return (fixture_dir() / "ground_truth.json").string(); }
    std::string preds() const { return (fixture_dir() / "predictions.json").string(); }
    std::string meta() const { return (fixture_dir() / "run_metadata.json").string(); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static json report_of(const socbench::testing::CliResult& r) {
        const auto doc = json::parse(r.out);
        EXPECT_TRUE(doc.contains("generated_at"));
        return doc.at("report");
    }

    TempDir dir_;
};

void write_balanced_truth(const std::string& file, std::size_t per_class) {
    json arr = json::array();
    int i = 0;
    for (auto c : taxonomy::kAllCategories) {
        for (std::size_t k = 0; k < per_class; ++k) {
            arr.push_back({{"id", "r" + std::to_string(i++)},
                           {"category", taxonomy::category_id(c)},
                           {"severity", "Medium"}});
        }
    }
    spit(file, arr.dump());
}

const char* kFullMetadata = R"({
  "max_new_tokens": 256, "temperature": 0.0, "do_sample": false, "parser_type": "fuzzy",
  "normalization_version": "socbench-v0-keywords-1", "post_processing": ["loop_truncation"]
})";

}  // namespace

TEST_F(CliTest, EvaluateFuzzyReproducesHeadline) {
    const auto r = run_cli({"evaluate", "--predictions", preds(), "--ground-truth", gt(),
                            "--parser", "fuzzy"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"micro_threat_accuracy\": 0.76"), std::string::npos);
    const auto rep = report_of(r);
    EXPECT_EQ(rep["schema_version"], "socbench.score_report/1");
    EXPECT_EQ(rep["parser"], "fuzzy");
    EXPECT_EQ(rep["severity_accuracy"], 0.58);
    EXPECT_EQ(rep["mitre_extraction_rate"], 1.0);
    EXPECT_EQ(rep["per_class"].size(), 13u);
    std::size_t inspected = 0;
    for (const auto& f : rep["failure_inspection"]) inspected += f["inspected"].get<bool>();
    EXPECT_EQ(inspected, 3u);
}

TEST_F(CliTest, EvaluateDefaultsToFuzzyAndAcceptsUnderscoreAlias) {
    const auto r = run_cli({"evaluate", "--predictions", preds(), "--ground_truth", gt()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(report_of(r)["parser"], "fuzzy");
    EXPECT_EQ(report_of(r)["micro_threat_accuracy"], 0.76);
}

TEST_F(CliTest, EvaluateStrictIsZero) {
    const auto r = run_cli({"evaluate", "--predictions", preds(), "--ground-truth", gt(),
                            "--parser", "strict"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = report_of(r);
    EXPECT_EQ(rep["micro_threat_accuracy"], 0.0);
    EXPECT_EQ(rep["severity_accuracy"], 0.58);
    EXPECT_EQ(rep["metadata"]["post_processing"], json::array());
}

TEST_F(CliTest, EvaluateEmbedsAndValidatesMetadata) {
    auto r = run_cli({"evaluate", "--predictions", preds(), "--ground-truth", gt(), "--metadata",
                      meta()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto md = report_of(r)["metadata"];
    EXPECT_EQ(md["max_new_tokens"], 120);
    EXPECT_FALSE(md.contains("temperature"));
    EXPECT_EQ(md["parser_type"], "fuzzy");

    r = run_cli({"evaluate", "--predictions", preds(), "--ground-truth", gt(), "--metadata",
                 meta(), "--parser", "strict"});
    EXPECT_EQ(r.code, cli::kExitInputError);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("parser_type"), std::string::npos);
}

TEST_F(CliTest, MarkdownAndTextRenderings) {
    auto r = run_cli({"evaluate", "--predictions", preds(), "--ground-truth", gt(), "--format",
                      "markdown"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("| Reconnaissance"), std::string::npos);
    EXPECT_NE(r.out.find("76.0%"), std::string::npos);
    r = run_cli({"compare", "--predictions", preds(), "--ground-truth", gt(), "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("+76.0"), std::string::npos);
}

TEST_F(CliTest, TruncatedJsonEmitsNothing) {
    const auto full = slurp(preds());
    spit(path("trunc.json"), full.substr(0, full.size() / 2));
    const auto r = run_cli({"evaluate", "--predictions", path("trunc.json"), "--ground-truth", gt()});
    EXPECT_EQ(r.code, cli::kExitInputError);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);
}

TEST_F(CliTest, MissingFileAndIdMismatch) {
    auto r = run_cli({"evaluate", "--predictions", path("absent.json"), "--ground-truth", gt()});
    EXPECT_NE(r.code, 0);
    EXPECT_TRUE(r.out.empty());

    auto doc = json::parse(slurp(preds()));
    doc.erase(doc.begin() + 4);
    doc.push_back({{"id", "stray-id"}, {"raw_output", ""}});
    spit(path("mismatch.json"), doc.dump());
    r = run_cli({"evaluate", "--predictions", path("mismatch.json"), "--ground-truth", gt()});
    EXPECT_EQ(r.code, cli::kExitInputError);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("eval-005"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("stray-id"), std::string::npos) << r.err;
}

TEST_F(CliTest, CompareReportsDelta) {
    const auto r = run_cli({"compare", "--predictions", preds(), "--ground-truth", gt()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"threat_delta_pp\": 76.0"), std::string::npos);
    const auto rep = report_of(r);
    EXPECT_EQ(rep["severity_delta_pp"], 0.0);
    EXPECT_EQ(rep["suppressed_count"], 38);
}

TEST_F(CliTest, CompareEmptyDataset) {
    spit(path("empty.json"), "[]");
    const auto r = run_cli({"compare", "--predictions", path("empty.json"), "--ground-truth", gt()});
    EXPECT_EQ(r.code, cli::kExitInputError);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("empty dataset"), std::string::npos);
}

TEST_F(CliTest, CheckReferenceShapeFails) {
    const auto r = run_cli({"check", "--ground-truth", gt(), "--metadata", meta()});
    EXPECT_EQ(r.code, cli::kExitCheckFailed);
    const auto rep = report_of(r);
    EXPECT_FALSE(rep["r1"]["pass"].get<bool>());
    EXPECT_EQ(rep["r1"]["shortfalls"].size(), 13u);
    EXPECT_EQ(rep["r4"]["missing"], json::array({"temperature"}));
}

TEST_F(CliTest, CheckCompliantSetPasses) {
    write_balanced_truth(path("gt260.json"), 20);
    spit(path("meta.json"), kFullMetadata);
    auto r = run_cli({"check", "--ground-truth", path("gt260.json"), "--metadata", path("meta.json")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(report_of(r)["all_pass"].get<bool>());

    r = run_cli({"check", "--ground-truth", path("gt260.json"), "--metadata", path("meta.json"),
                 "--primary-parser", "strict"});
    EXPECT_EQ(r.code, cli::kExitCheckFailed);
    EXPECT_FALSE(report_of(r)["r2"]["pass"].get<bool>());
}

TEST_F(CliTest, CheckWithReportEnforcesBreakdowns) {
    auto r = run_cli({"evaluate", "--predictions", preds(), "--ground-truth", gt()});
    ASSERT_EQ(r.code, 0);
    spit(path("report.json"), r.out);
    r = run_cli({"check", "--ground-truth", gt(), "--metadata", meta(), "--report",
                 path("report.json")});
    auto rep = report_of(r);
    EXPECT_TRUE(rep["r3"]["checked"].get<bool>());
    EXPECT_TRUE(rep["r3"]["pass"].get<bool>());

    auto doc = json::parse(slurp(path("report.json")));
    doc["report"]["failure_inspection"] = json::array();
    spit(path("stripped.json"), doc.dump());
    r = run_cli({"check", "--ground-truth", gt(), "--metadata", meta(), "--report",
                 path("stripped.json")});
    rep = report_of(r);
    EXPECT_FALSE(rep["r3"]["pass"].get<bool>());
    EXPECT_EQ(rep["r3"]["missing_breakdowns"].size(), 3u);
}

TEST_F(CliTest, FixtureIsByteIdentical) {
    const auto second = dir_.path() / "again";
    ASSERT_EQ(run_cli({"fixture", "--out", second.string()}).code, 0);
    for (const char* f : {"ground_truth.json", "predictions.json", "run_metadata.json"}) {
        EXPECT_EQ(slurp(fixture_dir() / f), slurp(second / f)) << f;
    }
}

TEST_F(CliTest, ReportBodyIsStableAcrossRuns) {
    const std::vector<std::string> args = {"compare", "--predictions", preds(), "--ground-truth", gt()};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    EXPECT_EQ(report_of(a).dump(), report_of(b).dump());

    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    const auto c = run_cli(args);
    const auto d = run_cli(args);
    ::unsetenv("SOURCE_DATE_EPOCH");
    EXPECT_EQ(c.out, d.out);
    EXPECT_EQ(json::parse(c.out)["generated_at"], "2023-11-14T22:13:20Z");
}

TEST(Cli, FuzzDefaultsAndErrors) {
    auto r = run_cli({"fuzz"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rep = json::parse(r.out)["report"];
    EXPECT_EQ(rep["fuzzy_recall"], 1.0);
    EXPECT_EQ(rep["strict_threat_recall"], 0.6);
    EXPECT_EQ(rep["samples_per_style"], 50);

    r = run_cli({"fuzz", "--samples", "0"});
    EXPECT_NE(r.code, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, cli::kExitInputError);
    EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitInputError);
    EXPECT_EQ(run_cli({"evaluate", "--predictions", "x.json"}).code, cli::kExitInputError);
    EXPECT_EQ(run_cli({"evaluate", "--predictions", "a", "--ground-truth", "b", "--parser", "regex"}).code,
              cli::kExitInputError);
    const auto help = run_cli({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("evaluate"), std::string::npos);
}

TEST(Cli, KeywordsMatchesShippedTable) {
    const auto r = run_cli({"keywords"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(std::filesystem::path(SOCBENCH_SOURCE_DIR) / "data" / "keyword_table.json"));
}
