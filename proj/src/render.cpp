#include "socbench/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace socbench::render {
namespace {

using taxonomy::display_name;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string yes_no(bool pass) { return pass ? "PASS" : "FAIL"; }

std::string failure_cell(const scoring::ClassFailureSummary& f) {
    if (!f.inspected) return "-";
    return std::to_string(f.wrong_prediction) + " wrong / " + std::to_string(f.empty_prediction) +
           " empty / " + std::to_string(f.extraction_failure) + " extraction";
}

const scoring::ClassFailureSummary* find_inspection(const scoring::ScoreReport& r,
                                                    taxonomy::Category c) {
    for (const auto& f : r.failure_inspection) {
        if (f.category == c) return &f;
    }
    return nullptr;
}

std::string ci_label(double confidence) { return fmt("%.0f%%", confidence * 100.0); }

}  // namespace

std::string percent(double fraction) {
    // Avoid "-0.0%" for tiny negative rounding noise.
    const double v = std::round(fraction * 1000.0) / 10.0;
    return fmt("%.1f%%", v == 0.0 ? 0.0 : v);
}

std::string delta_pp(double pp) {
    const double v = std::round(pp * 10.0) / 10.0;
    if (v == 0.0) return "0.0pp";
    return fmt(v > 0 ? "+%.1fpp" : "%.1fpp", v);
}

std::string markdown(const scoring::ScoreReport& r) {
    std::string out;
    out += "## Per-Class Accuracy (" + std::string(extraction::parser_name(r.parser)) +
           " parser, N = " + std::to_string(r.n_total) + ")\n\n";
    out += "| Category | n | Accuracy | " + ci_label(r.confidence) +
           " Wilson CI | Failure breakdown |\n";
    out += "|---|---:|---:|---|---|\n";
    // Highest accuracy first, then larger classes, as in the reference per-class table.
    auto rows = r.per_class;
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
        return a.n > b.n;
    });
    for (const auto& c : rows) {
        const auto* f = find_inspection(r, c.category);
        out += "| " + std::string(display_name(c.category)) + " | " + std::to_string(c.n) + " | " +
               (c.accuracy < 0.5 ? "**" + percent(c.accuracy) + "**" : percent(c.accuracy)) +
               " | [" + percent(c.wilson_low) + ", " + percent(c.wilson_high) + "] | " +
               (f ? failure_cell(*f) : "-") + " |\n";
    }
    out += "| **Overall** | **" + std::to_string(r.n_total) + "** | **" +
           percent(r.micro_threat_accuracy) + "** | | |\n\n";
    out += "| Metric | Value |\n|---|---:|\n";
    out += "| Threat accuracy (micro) | " + percent(r.micro_threat_accuracy) + " |\n";
    out += "| Threat accuracy (macro, " + std::to_string(r.macro_class_count) + " classes) | " +
           percent(r.macro_threat_accuracy) + " |\n";
    out += "| Severity accuracy | " + percent(r.severity_accuracy) + " |\n";
    out += "| MITRE extraction rate | " + percent(r.mitre_extraction_rate) + " |\n";
    out += "| Threat unmapped / absent | " + std::to_string(r.threat_outcomes.unmapped) + " / " +
           std::to_string(r.threat_outcomes.absent) + " |\n";
    return out;
}

std::string text(const scoring::ScoreReport& r) {
    std::string out;
    out += "parser: " + std::string(extraction::parser_name(r.parser)) + "\n";
    out += "records: " + std::to_string(r.n_total) + "\n";
    out += "threat accuracy (micro): " + percent(r.micro_threat_accuracy) + "\n";
    out += "threat accuracy (macro over " + std::to_string(r.macro_class_count) +
           " classes): " + percent(r.macro_threat_accuracy) + "\n";
    out += "severity accuracy: " + percent(r.severity_accuracy) + "\n";
    out += "mitre extraction rate: " + percent(r.mitre_extraction_rate) + "\n";
    out += "threat unmapped: " + std::to_string(r.threat_outcomes.unmapped) +
           ", absent: " + std::to_string(r.threat_outcomes.absent) + "\n";
    for (const auto& c : r.per_class) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-8s %-42s n=%-4zu acc=%-7s ci=[%s, %s]",
                      std::string(taxonomy::category_id(c.category)).c_str(),
                      std::string(display_name(c.category)).c_str(), c.n,
                      percent(c.accuracy).c_str(), percent(c.wilson_low).c_str(),
                      percent(c.wilson_high).c_str());
        out += line;
        if (const auto* f = find_inspection(r, c.category); f && f->inspected) {
            out += "  failures: " + failure_cell(*f);
        }
        out += "\n";
    }
    return out;
}

std::string markdown(const audit::SuppressionReport& r) {
    std::string out;
    out += "## Strict vs. Fuzzy Parser Comparison (N = " + std::to_string(r.fuzzy_report.n_total) +
           ", Same Model Outputs)\n\n";
    out += "| Metric | Strict | Fuzzy | Difference |\n|---|---:|---:|---:|\n";
    out += "| Threat Accuracy | " + percent(r.strict_report.micro_threat_accuracy) + " | " +
           percent(r.fuzzy_report.micro_threat_accuracy) + " | **" + delta_pp(r.threat_delta_pp) +
           "** |\n";
    out += "| Severity Accuracy | " + percent(r.strict_report.severity_accuracy) + " | " +
           percent(r.fuzzy_report.severity_accuracy) + " | " + delta_pp(r.severity_delta_pp) +
           " |\n\n";
    out += "Suppressed predictions (correct under fuzzy, threat field absent under strict): " +
           std::to_string(r.suppressed_count) + "\n";
    return out;
}

std::string text(const audit::SuppressionReport& r) {
    std::string out;
    out += "threat accuracy: strict " + percent(r.strict_report.micro_threat_accuracy) +
           ", fuzzy " + percent(r.fuzzy_report.micro_threat_accuracy) + ", delta " +
           delta_pp(r.threat_delta_pp) + "\n";
    out += "severity accuracy: strict " + percent(r.strict_report.severity_accuracy) +
           ", fuzzy " + percent(r.fuzzy_report.severity_accuracy) + ", delta " +
           delta_pp(r.severity_delta_pp) + "\n";
    out += "suppressed predictions: " + std::to_string(r.suppressed_count) + "\n";
    return out;
}

std::string markdown(const audit::ComplianceResult& c) {
    std::string out = "## Protocol Compliance\n\n| Requirement | Result | Detail |\n|---|---|---|\n";
    std::string r1 = "total " + std::to_string(c.total) + "; " +
                     std::to_string(c.r1_shortfalls.size()) + " class(es) below " +
                     std::to_string(audit::kMinPerClass);
    out += "| R1 minimum evaluation size | " + yes_no(c.r1_pass) + " | " + r1 + " |\n";
    out += "| R2 fuzzy primary metric | " + yes_no(c.r2_pass) + " | primary parser: " +
           std::string(extraction::parser_name(c.primary_parser)) + " |\n";
    out += "| R3 failure inspection | " + yes_no(c.r3_pass) + " | " +
           (c.r3_checked ? std::to_string(c.r3_missing_breakdowns.size()) +
                               " low-accuracy class(es) without breakdown"
                         : std::string("no score report supplied")) +
           " |\n";
    std::string missing;
    for (const auto& m : c.r4_missing) missing += (missing.empty() ? "" : ", ") + m;
    out += "| R4 metadata | " + yes_no(c.r4_pass) + " | " +
           (missing.empty() ? std::string("complete") : "missing: " + missing) + " |\n";
    if (!c.r1_shortfalls.empty()) {
        out += "\n| Short category | n |\n|---|---:|\n";
        for (const auto& s : c.r1_shortfalls) {
            out += "| " + std::string(display_name(s.category)) + " | " + std::to_string(s.n) +
                   " |\n";
        }
    }
    return out;
}

std::string text(const audit::ComplianceResult& c) {
    std::string out;
    out += "R1 " + yes_no(c.r1_pass) + " (total " + std::to_string(c.total) + ")\n";
    for (const auto& s : c.r1_shortfalls) {
        out += "  " + std::string(taxonomy::category_id(s.category)) + " " +
               std::string(display_name(s.category)) + ": n=" + std::to_string(s.n) + "\n";
    }
    out += "R2 " + yes_no(c.r2_pass) + " (primary parser " +
           std::string(extraction::parser_name(c.primary_parser)) + ")\n";
    out += "R3 " + yes_no(c.r3_pass) + (c.r3_checked ? "" : " (no score report supplied)") + "\n";
    for (auto cat : c.r3_missing_breakdowns) {
        out += "  no breakdown: " + std::string(display_name(cat)) + "\n";
    }
    out += "R4 " + yes_no(c.r4_pass) + "\n";
    for (const auto& m : c.r4_missing) out += "  missing: " + m + "\n";
    return out;
}

std::string markdown(const synthgen::GridRecall& g) {
    std::string out = "## Extraction Recall over the Style Grid (" +
                      std::to_string(g.samples_per_style) + " samples per style, seed " +
                      std::to_string(g.seed) + ")\n\n";
    out += "| Key style | Separator | Fuzzy threat | Fuzzy severity | Fuzzy MITRE | Strict threat | "
           "Strict severity |\n|---|---|---:|---:|---:|---:|---:|\n";
    for (const auto& s : g.styles) {
        const double n = static_cast<double>(s.samples);
        out += "| " + std::string(synthgen::key_case_name(s.style.key_case)) + " | " +
               std::string(synthgen::separator_name(s.style.separator)) + " | " +
               percent(s.fuzzy.threat / n) + " | " + percent(s.fuzzy.severity / n) + " | " +
               percent(s.fuzzy.mitre / n) + " | " + percent(s.strict.threat / n) + " | " +
               percent(s.strict.severity / n) + " |\n";
    }
    out += "\nFuzzy recall " + percent(g.fuzzy_recall) + ", fuzzy normalization " +
           percent(g.fuzzy_normalization_accuracy) + ", strict threat recall " +
           percent(g.strict_threat_recall) + "\n";
    return out;
}

std::string text(const synthgen::GridRecall& g) {
    std::string out;
    out += "fuzzy recall: " + percent(g.fuzzy_recall) + "\n";
    out += "fuzzy normalization accuracy: " + percent(g.fuzzy_normalization_accuracy) + "\n";
    out += "strict threat recall: " + percent(g.strict_threat_recall) + "\n";
    out += "strict severity recall: " + percent(g.strict_severity_recall) + "\n";
    return out;
}

}  // namespace socbench::render
