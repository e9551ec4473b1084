#pragma once

// Markdown and plain-text renderings. Percentages are rounded to one decimal;
// JSON reports keep full precision.

#include <string>

#include "socbench/audit.hpp"
#include "socbench/scoring.hpp"
#include "socbench/synthgen.hpp"

namespace socbench::render {

enum class Format { Json, Markdown, Text };

/// "76.0%"
std::string percent(double fraction);
/// "+76.0pp", "0.0pp", "-3.5pp"
std::string delta_pp(double pp);

std::string markdown(const scoring::ScoreReport& report);
std::string text(const scoring::ScoreReport& report);
std::string markdown(const audit::SuppressionReport& report);
std::string text(const audit::SuppressionReport& report);
std::string markdown(const audit::ComplianceResult& result);
std::string text(const audit::ComplianceResult& result);
std::string markdown(const synthgen::GridRecall& recall);
std::string text(const synthgen::GridRecall& recall);

}  // namespace socbench::render
