#pragma once

// Field extraction from free-form model output: the exact-key strict parser
// and the format-tolerant fuzzy parser.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace socbench::extraction {

enum class ParserKind : std::uint8_t { Strict, Fuzzy };

/// "strict" / "fuzzy".
std::string_view parser_name(ParserKind p) noexcept;
std::optional<ParserKind> parse_parser_kind(std::string_view name);

/// Every present value is non-empty after trimming.
struct ExtractedFields {
    std::optional<std::string> threat;
    std::optional<std::string> severity;
    std::optional<std::string> mitre;
    ParserKind parser = ParserKind::Strict;
    bool truncated_at_marker = false;
};

inline constexpr std::string_view kLoopMarker = "### Input:";

/// Prefix of `output` strictly before the first loop marker, or `output` unchanged.
std::string_view truncate_loops(std::string_view output) noexcept;

/// Case-insensitive `KEY[:\s]+([^\n,]+)` for THREAT_TYPE, SEVERITY and MITRE_ID.
/// Values are trimmed and upper-cased. No loop truncation. A key written with
/// spaces or hyphens does not match its underscore form.
ExtractedFields strict_extract(std::string_view output);

struct FuzzyOptions {
    /// Stop captured values at the first comma, as the strict parser does.
    bool stop_at_comma = false;
    /// When the tolerant key pattern finds nothing for a field, retry with the
    /// strict pattern for that field so strict's hits are always a subset.
    bool strict_fallback = true;
};

/// Loop truncation, then per-field tolerant key matching:
///   threat   : threat[ _-]*type
///   severity : severity
///   mitre    : mitre[ _-]*(technique[ _-]*)?(id)?
/// followed by `:`, `-` or `=` with optional surrounding blanks. Values run to
/// end of line, are trimmed, and keep their original case. First match wins.
ExtractedFields fuzzy_extract(std::string_view output, const FuzzyOptions& options = {});

ExtractedFields extract(std::string_view output, ParserKind parser);

/// Trims ASCII whitespace at both ends.
std::string_view trim(std::string_view s) noexcept;

}  // namespace socbench::extraction
