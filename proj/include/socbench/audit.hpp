#pragma once

// Diagnostics that make silent parser failures visible: strict-vs-fuzzy
// suppression reports, failure classification, and protocol compliance checks.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "socbench/metadata.hpp"
#include "socbench/scoring.hpp"

namespace socbench::audit {

using scoring::EvalRecord;
using scoring::GroundTruthRecord;
using scoring::Prediction;
using scoring::ScoreReport;

enum class FailureKind : std::uint8_t { WrongPrediction, EmptyPrediction, ExtractionFailure };

std::string_view failure_kind_name(FailureKind k) noexcept;

/// EmptyPrediction: raw output blank after loop truncation.
/// ExtractionFailure: non-blank output but no threat field extracted.
/// WrongPrediction: a threat field was extracted (including Unmapped) but is wrong.
/// Throws Error when called on a threat-correct record.
FailureKind classify_failure(const EvalRecord& record);

/// One entry per ground-truth class, in SB id order.
std::vector<scoring::ClassFailureSummary> inspect_failures(std::span<const EvalRecord> records);

/// score_dataset followed by inspect_failures.
ScoreReport evaluate(std::span<const EvalRecord> records, const scoring::ScoreOptions& options = {});

inline constexpr std::string_view kSuppressionReportSchema = "socbench.suppression_report/1";

struct SuppressionReport {
    ScoreReport strict_report;
    ScoreReport fuzzy_report;
    double threat_delta_pp = 0.0;
    double severity_delta_pp = 0.0;
    /// Records correct under fuzzy whose threat field was Absent under strict.
    std::size_t suppressed_count = 0;
    std::vector<std::string> suppressed_ids;
};

/// Scores the same raw outputs under both parsers. Throws IdMismatchError on
/// unaligned ids and Error on an empty dataset.
SuppressionReport compare_parsers(std::span<const GroundTruthRecord> truth,
                                  std::span<const Prediction> predictions,
                                  const taxonomy::KeywordTable& table,
                                  const scoring::ScoreOptions& options = {});

inline constexpr std::size_t kMinPerClass = 20;
inline constexpr std::size_t kMinTotal = 260;
inline constexpr double kInspectionThreshold = 0.5;

struct ClassShortfall {
    taxonomy::Category category;
    std::size_t n = 0;
};

inline constexpr std::string_view kComplianceSchema = "socbench.compliance_result/1";

struct ComplianceResult {
    bool r1_pass = false;
    std::size_t total = 0;
    std::vector<ClassShortfall> r1_shortfalls;

    bool r2_pass = false;
    extraction::ParserKind primary_parser = extraction::ParserKind::Fuzzy;

    bool r3_pass = false;
    /// False when no score report was supplied, in which case R3 is vacuous.
    bool r3_checked = false;
    std::vector<taxonomy::Category> r3_missing_breakdowns;

    bool r4_pass = false;
    std::vector<std::string> r4_missing;

    bool all_pass() const noexcept { return r1_pass && r2_pass && r3_pass && r4_pass; }
};

/// R1: every ground-truth class has at least 20 records and the total is at least 260.
/// R2: the primary figure comes from the fuzzy parser.
/// R3: every class below 50% accuracy in `scored` carries a failure breakdown.
/// R4: every metadata field is present.
ComplianceResult check_compliance(std::span<const GroundTruthRecord> truth,
                                  const RunMetadata& metadata,
                                  extraction::ParserKind primary_parser,
                                  const ScoreReport* scored = nullptr);

}  // namespace socbench::audit
