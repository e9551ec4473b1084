#include "socbench/audit.hpp"

#include <algorithm>
#include <array>

#include "socbench/error.hpp"

namespace socbench::audit {

using scoring::ClassFailureSummary;
using scoring::FieldOutcome;
using taxonomy::Category;

std::string_view failure_kind_name(FailureKind k) noexcept {
    switch (k) {
        case FailureKind::WrongPrediction: return "wrong_prediction";
        case FailureKind::EmptyPrediction: return "empty_prediction";
        case FailureKind::ExtractionFailure: return "extraction_failure";
    }
    return "";
}

FailureKind classify_failure(const EvalRecord& record) {
    if (record.threat_correct) {
        throw Error("classify_failure called on a correct record: " + record.id());
    }
    if (extraction::trim(extraction::truncate_loops(record.raw)).empty()) {
        return FailureKind::EmptyPrediction;
    }
    if (record.threat_outcome == FieldOutcome::Absent) return FailureKind::ExtractionFailure;
    return FailureKind::WrongPrediction;
}

std::vector<ClassFailureSummary> inspect_failures(std::span<const EvalRecord> records) {
    std::array<ClassFailureSummary, taxonomy::kCategoryCount> acc{};
    for (auto c : taxonomy::kAllCategories) acc[taxonomy::index_of(c)].category = c;

    std::array<std::array<std::size_t, 3>, taxonomy::kCategoryCount> kinds{};
    for (const auto& r : records) {
        const auto idx = taxonomy::index_of(r.truth.category);
        ++acc[idx].n;
        if (r.threat_correct) {
            ++acc[idx].correct;
        } else {
            ++kinds[idx][static_cast<std::size_t>(classify_failure(r))];
        }
    }

    std::vector<ClassFailureSummary> out;
    for (std::size_t idx = 0; idx < acc.size(); ++idx) {
        auto s = acc[idx];
        if (s.n == 0) continue;
        s.accuracy = static_cast<double>(s.correct) / static_cast<double>(s.n);
        if (s.accuracy < kInspectionThreshold) {
            s.inspected = true;
            s.wrong_prediction = kinds[idx][static_cast<std::size_t>(FailureKind::WrongPrediction)];
            s.empty_prediction = kinds[idx][static_cast<std::size_t>(FailureKind::EmptyPrediction)];
            s.extraction_failure =
                kinds[idx][static_cast<std::size_t>(FailureKind::ExtractionFailure)];
        }
        out.push_back(s);
    }
    return out;
}

ScoreReport evaluate(std::span<const EvalRecord> records, const scoring::ScoreOptions& options) {
    auto report = scoring::score_dataset(records, options);
    report.failure_inspection = inspect_failures(records);
    return report;
}

SuppressionReport compare_parsers(std::span<const GroundTruthRecord> truth,
                                  std::span<const Prediction> predictions,
                                  const taxonomy::KeywordTable& table,
                                  const scoring::ScoreOptions& options) {
    const auto strict =
        scoring::score_predictions(truth, predictions, extraction::ParserKind::Strict, table);
    const auto fuzzy =
        scoring::score_predictions(truth, predictions, extraction::ParserKind::Fuzzy, table);

    SuppressionReport out;
    out.strict_report = evaluate(strict, options);
    out.fuzzy_report = evaluate(fuzzy, options);
    out.threat_delta_pp =
        100.0 * (out.fuzzy_report.micro_threat_accuracy - out.strict_report.micro_threat_accuracy);
    out.severity_delta_pp =
        100.0 * (out.fuzzy_report.severity_accuracy - out.strict_report.severity_accuracy);
    // Both vectors follow ground-truth order.
    for (std::size_t i = 0; i < fuzzy.size(); ++i) {
        if (fuzzy[i].threat_correct && strict[i].threat_outcome == FieldOutcome::Absent) {
            ++out.suppressed_count;
            out.suppressed_ids.push_back(fuzzy[i].id());
        }
    }
    return out;
}

ComplianceResult check_compliance(std::span<const GroundTruthRecord> truth,
                                  const RunMetadata& metadata,
                                  extraction::ParserKind primary_parser,
                                  const ScoreReport* scored) {
    ComplianceResult res;

    std::array<std::size_t, taxonomy::kCategoryCount> n{};
    for (const auto& t : truth) ++n[taxonomy::index_of(t.category)];
    res.total = truth.size();
    for (auto c : taxonomy::kAllCategories) {
        const auto count = n[taxonomy::index_of(c)];
        if (count > 0 && count < kMinPerClass) res.r1_shortfalls.push_back({c, count});
    }
    res.r1_pass = res.r1_shortfalls.empty() && res.total >= kMinTotal;

    res.primary_parser = primary_parser;
    res.r2_pass = primary_parser == extraction::ParserKind::Fuzzy;

    res.r3_checked = scored != nullptr;
    if (scored) {
        for (const auto& cls : scored->per_class) {
            if (cls.accuracy >= kInspectionThreshold) continue;
            const auto it = std::find_if(
                scored->failure_inspection.begin(), scored->failure_inspection.end(),
                [&](const ClassFailureSummary& s) { return s.category == cls.category; });
            const bool complete =
                it != scored->failure_inspection.end() && it->inspected &&
                it->wrong_prediction + it->empty_prediction + it->extraction_failure ==
                    cls.n - cls.correct;
            if (!complete) res.r3_missing_breakdowns.push_back(cls.category);
        }
    }
    res.r3_pass = res.r3_missing_breakdowns.empty();

    res.r4_missing = missing_metadata_fields(metadata);
    res.r4_pass = res.r4_missing.empty();
    return res;
}

}  // namespace socbench::audit
