#include "socbench/metadata.hpp"

namespace socbench {

std::vector<std::string> missing_metadata_fields(const RunMetadata& meta) {
    std::vector<std::string> missing;
    if (!meta.max_new_tokens) missing.emplace_back("max_new_tokens");
    if (!meta.temperature) missing.emplace_back("temperature");
    if (!meta.do_sample) missing.emplace_back("do_sample");
    if (!meta.parser_type) missing.emplace_back("parser_type");
    if (!meta.normalization_version) missing.emplace_back("normalization_version");
    if (!meta.post_processing) missing.emplace_back("post_processing");
    return missing;
}

}  // namespace socbench
