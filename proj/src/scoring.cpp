#include "socbench/scoring.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "socbench/error.hpp"

namespace socbench {

namespace {
std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

std::string mismatch_message(const std::vector<std::string>& missing,
                             const std::vector<std::string>& unknown) {
    std::string msg = "prediction/ground-truth id mismatch";
    if (!missing.empty()) msg += "; no prediction for: " + join_ids(missing);
    if (!unknown.empty()) msg += "; no ground truth for: " + join_ids(unknown);
    return msg;
}
}  // namespace

IdMismatchError::IdMismatchError(std::vector<std::string> missing_predictions,
                                 std::vector<std::string> unknown_predictions)
    : InputError(mismatch_message(missing_predictions, unknown_predictions)),
      missing_(std::move(missing_predictions)),
      unknown_(std::move(unknown_predictions)) {}

}  // namespace socbench

namespace socbench::scoring {
namespace {

// Acklam's rational approximation of the inverse normal CDF (relative error
// about 1.15e-9), polished with one Halley step against std::erfc.
double acklam(double p) {
    static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                                -2.759285104469687e+02, 1.383577518672690e+02,
                                                -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                                -1.556989798598866e+02, 6.680131188771972e+01,
                                                -1.328068155288572e+01};
    static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                                -2.400758277161838e+00, -2.549732539343734e+00,
                                                4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

void tally(OutcomeTally& t, FieldOutcome o) {
    switch (o) {
        case FieldOutcome::Mapped: ++t.mapped; break;
        case FieldOutcome::Unmapped: ++t.unmapped; break;
        case FieldOutcome::Absent: ++t.absent; break;
    }
}

}  // namespace

std::string_view outcome_name(FieldOutcome o) noexcept {
    switch (o) {
        case FieldOutcome::Mapped: return "mapped";
        case FieldOutcome::Unmapped: return "unmapped";
        case FieldOutcome::Absent: return "absent";
    }
    return "";
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error("normal_quantile: p must lie in (0, 1)");
    double x = acklam(p);
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x -= u / (1.0 + x * u / 2.0);
    return x;
}

Interval wilson_interval(std::size_t correct, std::size_t n, double confidence) {
    if (n == 0) throw Error("empty class");
    if (correct > n) throw Error("invalid counts");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error("confidence must lie strictly between 0 and 1");
    }
    const double z = normal_quantile(0.5 + confidence / 2.0);
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(correct) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));

    Interval iv{std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
    // The closed form lands on 0 and 1 only up to rounding.
    if (correct == 0) iv.low = 0.0;
    if (correct == n) iv.high = 1.0;
    return iv;
}

std::vector<std::pair<GroundTruthRecord, Prediction>> join_by_id(
    std::span<const GroundTruthRecord> truth, std::span<const Prediction> predictions) {
    std::map<std::string_view, const Prediction*> by_id;
    for (const auto& p : predictions) {
        if (!by_id.emplace(p.id, &p).second) {
            throw InputError("duplicate prediction id: " + p.id);
        }
    }
    std::set<std::string_view> truth_ids;
    std::vector<std::string> missing;
    for (const auto& t : truth) {
        if (!truth_ids.insert(t.id).second) throw InputError("duplicate ground-truth id: " + t.id);
        if (!by_id.contains(t.id)) missing.push_back(t.id);
    }
    std::vector<std::string> unknown;
    for (const auto& p : predictions) {
        if (!truth_ids.contains(p.id)) unknown.push_back(p.id);
    }
    if (!missing.empty() || !unknown.empty()) {
        throw IdMismatchError(std::move(missing), std::move(unknown));
    }

    std::vector<std::pair<GroundTruthRecord, Prediction>> joined;
    joined.reserve(truth.size());
    for (const auto& t : truth) joined.emplace_back(t, *by_id.at(t.id));
    return joined;
}

EvalRecord score_record(const GroundTruthRecord& truth, std::string_view raw, ParserKind parser,
                        const taxonomy::KeywordTable& table) {
    EvalRecord rec;
    rec.truth = truth;
    rec.raw = std::string(raw);
    rec.extracted = extraction::extract(raw, parser);

    if (rec.extracted.threat) {
        rec.predicted_category = taxonomy::normalize_threat(*rec.extracted.threat, table);
        rec.threat_outcome = rec.predicted_category ? FieldOutcome::Mapped : FieldOutcome::Unmapped;
    }
    if (rec.extracted.severity) {
        rec.predicted_severity = taxonomy::normalize_severity(*rec.extracted.severity);
        rec.severity_outcome =
            rec.predicted_severity ? FieldOutcome::Mapped : FieldOutcome::Unmapped;
    }
    rec.threat_correct = rec.predicted_category == truth.category;
    rec.severity_correct = rec.predicted_severity == truth.severity;
    return rec;
}

std::vector<EvalRecord> score_predictions(std::span<const GroundTruthRecord> truth,
                                          std::span<const Prediction> predictions,
                                          ParserKind parser, const taxonomy::KeywordTable& table) {
    std::vector<EvalRecord> out;
    for (const auto& [t, p] : join_by_id(truth, predictions)) {
        out.push_back(score_record(t, p.raw_output, parser, table));
    }
    return out;
}

ScoreReport score_dataset(std::span<const EvalRecord> records, const ScoreOptions& options) {
    if (records.empty()) throw Error("empty dataset");
    const ParserKind parser = records.front().extracted.parser;

    ScoreReport report;
    report.parser = parser;
    report.confidence = options.confidence;
    report.n_total = records.size();

    std::array<std::size_t, taxonomy::kCategoryCount> n{};
    std::array<std::size_t, taxonomy::kCategoryCount> correct{};
    for (const auto& r : records) {
        if (r.extracted.parser != parser) throw Error("records were scored by different parsers");
        const auto idx = taxonomy::index_of(r.truth.category);
        ++n[idx];
        if (r.threat_correct) {
            ++correct[idx];
            ++report.threat_correct;
        }
        if (r.severity_correct) ++report.severity_correct;
        if (r.mitre_extracted()) ++report.mitre_extracted;
        tally(report.threat_outcomes, r.threat_outcome);
        tally(report.severity_outcomes, r.severity_outcome);
    }

    const double total = static_cast<double>(report.n_total);
    report.micro_threat_accuracy = static_cast<double>(report.threat_correct) / total;
    report.severity_accuracy = static_cast<double>(report.severity_correct) / total;
    report.mitre_extraction_rate = static_cast<double>(report.mitre_extracted) / total;

    double accuracy_sum = 0.0;
    for (auto c : taxonomy::kAllCategories) {
        const auto idx = taxonomy::index_of(c);
        if (n[idx] == 0) continue;
        ClassScore cs{c, n[idx], correct[idx],
                      static_cast<double>(correct[idx]) / static_cast<double>(n[idx]), 0.0, 0.0};
        const auto iv = wilson_interval(correct[idx], n[idx], options.confidence);
        cs.wilson_low = iv.low;
        cs.wilson_high = iv.high;
        accuracy_sum += cs.accuracy;
        report.per_class.push_back(cs);
    }
    report.macro_class_count = report.per_class.size();
    report.macro_threat_accuracy = accuracy_sum / static_cast<double>(report.macro_class_count);

    report.metadata.parser_type = parser;
    report.metadata.normalization_version = options.normalization_version;
    report.metadata.post_processing =
        parser == ParserKind::Fuzzy ? std::vector<std::string>{"loop_truncation"}
                                    : std::vector<std::string>{};
    return report;
}

}  // namespace socbench::scoring
