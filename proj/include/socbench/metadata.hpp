#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "socbench/extraction.hpp"

namespace socbench {

/// Evaluation-run metadata that makes a reported score reproducible.
/// Fields are optional so incomplete files can be loaded and diagnosed;
/// reports produced by this tool always fill parser_type and
/// normalization_version.
struct RunMetadata {
    std::optional<std::int64_t> max_new_tokens;
    std::optional<double> temperature;
    std::optional<bool> do_sample;
    std::optional<extraction::ParserKind> parser_type;
    std::optional<std::string> normalization_version;
    std::optional<std::vector<std::string>> post_processing;

    bool operator==(const RunMetadata&) const = default;
};

/// Names of absent fields, in declaration order.
std::vector<std::string> missing_metadata_fields(const RunMetadata& meta);

}  // namespace socbench
