#include "socbench/extraction.hpp"

#include <array>
#include <regex>

#include "socbench/taxonomy.hpp"

namespace socbench::extraction {
namespace {

constexpr std::array<std::string_view, 3> kStrictKeys = {"THREAT_TYPE", "SEVERITY", "MITRE_ID"};

char ascii_upper(char c) noexcept {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

// Python's \s.
bool is_py_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool key_at(std::string_view text, std::size_t pos, std::string_view key) noexcept {
    if (pos + key.size() > text.size()) return false;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (ascii_upper(text[pos + i]) != key[i]) return false;
    }
    return true;
}

std::string_view value_run(std::string_view text, std::size_t from, bool stop_at_comma) noexcept {
    std::size_t end = from;
    while (end < text.size() && text[end] != '\n' && !(stop_at_comma && text[end] == ',')) ++end;
    return text.substr(from, end - from);
}

// Emulates re.search(rf"{key}[:\s]+([^\n,]+)", text, re.IGNORECASE) including
// backtracking of the separator run. Returns the raw capture group.
std::optional<std::string_view> strict_capture(std::string_view text, std::string_view key) {
    for (std::size_t pos = 0; pos + key.size() <= text.size(); ++pos) {
        if (!key_at(text, pos, key)) continue;
        const std::size_t sep_begin = pos + key.size();
        std::size_t sep_end = sep_begin;
        while (sep_end < text.size() && (text[sep_end] == ':' || is_py_space(text[sep_end]))) {
            ++sep_end;
        }
        if (sep_end == sep_begin) continue;
        if (sep_end < text.size() && text[sep_end] != ',') {
            return value_run(text, sep_end, true);
        }
        // Greedy run hit ',' or end of text: give characters back one at a time.
        for (std::size_t start = sep_end - 1; start > sep_begin; --start) {
            if (text[start] != '\n') return value_run(text, start, true);
        }
    }
    return std::nullopt;
}

const std::array<std::regex, 3>& tolerant_keys() {
    static const std::array<std::regex, 3> keys = [] {
        constexpr auto flags = std::regex::ECMAScript | std::regex::icase | std::regex::optimize;
        const std::string sep = R"([ \t]*[:=-]+[ \t]*)";
        return std::array<std::regex, 3>{
            std::regex(R"(threat[ \t_-]*type)" + sep, flags),
            std::regex(R"(severity)" + sep, flags),
            std::regex(R"(mitre[ \t_-]*(?:technique[ \t_-]*)?(?:id)?)" + sep, flags),
        };
    }();
    return keys;
}

// First key+separator hit whose value (rest of line) is non-blank.
std::optional<std::string_view> tolerant_capture(std::string_view text, const std::regex& key,
                                                 bool stop_at_comma) {
    using It = std::string_view::const_iterator;
    for (std::regex_iterator<It> it(text.begin(), text.end(), key), end; it != end; ++it) {
        const auto from = static_cast<std::size_t>(it->position(0) + it->length(0));
        const auto value = trim(value_run(text, from, stop_at_comma));
        if (!value.empty()) return value;
    }
    return std::nullopt;
}

std::array<std::optional<std::string>*, 3> slots(ExtractedFields& f) {
    return {&f.threat, &f.severity, &f.mitre};
}

}  // namespace

std::string_view parser_name(ParserKind p) noexcept {
    return p == ParserKind::Strict ? "strict" : "fuzzy";
}

std::optional<ParserKind> parse_parser_kind(std::string_view name) {
    const auto key = taxonomy::normalize_text(name);
    if (key == "strict") return ParserKind::Strict;
    if (key == "fuzzy") return ParserKind::Fuzzy;
    return std::nullopt;
}

std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view ws = " \t\n\r\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::string_view truncate_loops(std::string_view output) noexcept {
    const auto pos = output.find(kLoopMarker);
    return pos == std::string_view::npos ? output : output.substr(0, pos);
}

ExtractedFields strict_extract(std::string_view output) {
    ExtractedFields fields;
    fields.parser = ParserKind::Strict;
    auto out = slots(fields);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto capture = strict_capture(output, kStrictKeys[i]);
        if (!capture) continue;
        // A blank capture is what Python would store as ""; treat it as absent.
        const auto value = trim(*capture);
        if (value.empty()) continue;
        std::string upper(value);
        for (auto& c : upper) c = ascii_upper(c);
        *out[i] = std::move(upper);
    }
    return fields;
}

ExtractedFields fuzzy_extract(std::string_view output, const FuzzyOptions& options) {
    ExtractedFields fields;
    fields.parser = ParserKind::Fuzzy;
    const auto text = truncate_loops(output);
    fields.truncated_at_marker = text.size() != output.size();

    auto out = slots(fields);
    for (std::size_t i = 0; i < 3; ++i) {
        auto value = tolerant_capture(text, tolerant_keys()[i], options.stop_at_comma);
        if (!value && options.strict_fallback) {
            if (const auto capture = strict_capture(text, kStrictKeys[i])) {
                if (const auto v = trim(*capture); !v.empty()) value = v;
            }
        }
        if (value) *out[i] = std::string(*value);
    }
    return fields;
}

ExtractedFields extract(std::string_view output, ParserKind parser) {
    return parser == ParserKind::Strict ? strict_extract(output) : fuzzy_extract(output);
}

}  // namespace socbench::extraction
