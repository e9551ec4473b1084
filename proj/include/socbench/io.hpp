#pragma once

// JSON file formats: predictions, ground truth, run metadata, and the report
// documents emitted by the CLI. Report key order is fixed.

#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "socbench/audit.hpp"
#include "socbench/metadata.hpp"
#include "socbench/scoring.hpp"
#include "socbench/synthgen.hpp"

namespace socbench::io {

using json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws InputError when the file is missing or malformed.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes `doc` indented by two spaces with a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& doc);

/// `[ {"id", "raw_output"} ]`; ids unique, raw_output may be "".
std::vector<scoring::Prediction> parse_predictions(const nlohmann::json& doc);
std::vector<scoring::Prediction> load_predictions(const std::filesystem::path& path);
json predictions_to_json(std::span<const scoring::Prediction> predictions);

/// `[ {"id", "category", "severity", "mitre_technique"?} ]`; category is an
/// SB id or canonical display name.
std::vector<scoring::GroundTruthRecord> parse_ground_truth(const nlohmann::json& doc);
std::vector<scoring::GroundTruthRecord> load_ground_truth(const std::filesystem::path& path);
json ground_truth_to_json(std::span<const scoring::GroundTruthRecord> truth);

/// Absent or null members stay unset.
RunMetadata parse_metadata(const nlohmann::json& doc);
RunMetadata load_metadata(const std::filesystem::path& path);
json metadata_to_json(const RunMetadata& meta);

json to_json(const scoring::ScoreReport& report);
scoring::ScoreReport score_report_from_json(const nlohmann::json& doc);
json to_json(const audit::SuppressionReport& report);
json to_json(const audit::ComplianceResult& result);
json to_json(const synthgen::GridRecall& recall);

}  // namespace socbench::io
