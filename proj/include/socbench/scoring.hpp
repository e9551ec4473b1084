#pragma once

// Per-record scoring and dataset aggregation: micro/macro threat accuracy,
// severity accuracy, MITRE extraction rate and per-class Wilson intervals.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socbench/extraction.hpp"
#include "socbench/metadata.hpp"
#include "socbench/taxonomy.hpp"

namespace socbench::scoring {

using extraction::ParserKind;
using taxonomy::Category;
using taxonomy::Severity;

struct GroundTruthRecord {
    std::string id;
    Category category;
    Severity severity;
    std::optional<std::string> mitre_technique;
};

struct Prediction {
    std::string id;
    std::string raw_output;
};

/// Mapped: extracted and normalized. Unmapped: extracted but no canonical value.
/// Absent: the parser never found the field. Unmapped and Absent both score incorrect.
enum class FieldOutcome : std::uint8_t { Mapped, Unmapped, Absent };

std::string_view outcome_name(FieldOutcome o) noexcept;

struct EvalRecord {
    GroundTruthRecord truth;
    std::string raw;
    extraction::ExtractedFields extracted;
    FieldOutcome threat_outcome = FieldOutcome::Absent;
    std::optional<Category> predicted_category;
    FieldOutcome severity_outcome = FieldOutcome::Absent;
    std::optional<Severity> predicted_severity;
    bool threat_correct = false;
    bool severity_correct = false;

    const std::string& id() const noexcept { return truth.id; }
    bool mitre_extracted() const noexcept { return extracted.mitre.has_value(); }
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Upper quantile of the standard normal: Phi^-1(p) for 0 < p < 1.
double normal_quantile(double p);

/// Wilson score interval for `correct` successes out of `n` trials at the given
/// two-sided confidence. Endpoints are clamped to [0, 1].
/// Throws Error("empty class") for n == 0 and Error("invalid counts") for correct > n.
Interval wilson_interval(std::size_t correct, std::size_t n, double confidence);

struct ClassScore {
    Category category;
    std::size_t n = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

/// Failure-inspection entry for one ground-truth class. Classes with accuracy
/// below 0.5 are `inspected` and carry a breakdown; other classes carry totals only.
struct ClassFailureSummary {
    Category category;
    std::size_t n = 0;
    std::size_t correct = 0;
    double accuracy = 0.0;
    bool inspected = false;
    std::size_t wrong_prediction = 0;
    std::size_t empty_prediction = 0;
    std::size_t extraction_failure = 0;
};

struct OutcomeTally {
    std::size_t mapped = 0;
    std::size_t unmapped = 0;
    std::size_t absent = 0;
};

inline constexpr std::string_view kScoreReportSchema = "socbench.score_report/1";

struct ScoreReport {
    ParserKind parser = ParserKind::Fuzzy;
    std::size_t n_total = 0;
    std::size_t threat_correct = 0;
    std::size_t severity_correct = 0;
    std::size_t mitre_extracted = 0;
    double micro_threat_accuracy = 0.0;
    double macro_threat_accuracy = 0.0;
    /// Number of ground-truth classes averaged by macro accuracy.
    std::size_t macro_class_count = 0;
    double severity_accuracy = 0.0;
    double mitre_extraction_rate = 0.0;
    double confidence = 0.95;
    OutcomeTally threat_outcomes;
    OutcomeTally severity_outcomes;
    std::vector<ClassScore> per_class;
    std::vector<ClassFailureSummary> failure_inspection;
    RunMetadata metadata;
};

/// Pairs ground truth with predictions by id. Throws IdMismatchError naming
/// every unmatched id, or InputError on duplicate ids.
std::vector<std::pair<GroundTruthRecord, Prediction>> join_by_id(
    std::span<const GroundTruthRecord> truth, std::span<const Prediction> predictions);

EvalRecord score_record(const GroundTruthRecord& truth, std::string_view raw, ParserKind parser,
                        const taxonomy::KeywordTable& table);

std::vector<EvalRecord> score_predictions(std::span<const GroundTruthRecord> truth,
                                          std::span<const Prediction> predictions,
                                          ParserKind parser, const taxonomy::KeywordTable& table);

struct ScoreOptions {
    double confidence = 0.95;
    std::string normalization_version = std::string(taxonomy::KeywordTable::kBuiltinVersion);
};

/// Aggregates scored records. Throws Error on empty input or mixed parsers.
/// The metadata block records the parser, normalization version and the
/// post-processing the parser applies; failure_inspection is left empty
/// (see audit::inspect_failures).
ScoreReport score_dataset(std::span<const EvalRecord> records, const ScoreOptions& options = {});

}  // namespace socbench::scoring
