#pragma once

// Canonical threat taxonomy (13 broad categories), severity levels and the
// keyword table used to normalize free-form threat labels.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace socbench::taxonomy {

enum class Category : std::uint8_t {
    SqlInjection = 1,
    CrossSiteScripting,
    CommandInjection,
    PathTraversal,
    LocalFileInclusion,
    BruteForce,
    CredentialStuffing,
    Reconnaissance,
    DenialOfService,
    DataExfiltration,
    LateralMovement,
    MalwareC2,
    NoThreat,
};

inline constexpr std::size_t kCategoryCount = 13;

inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::SqlInjection,     Category::CrossSiteScripting, Category::CommandInjection,
    Category::PathTraversal,    Category::LocalFileInclusion, Category::BruteForce,
    Category::CredentialStuffing, Category::Reconnaissance,   Category::DenialOfService,
    Category::DataExfiltration, Category::LateralMovement,    Category::MalwareC2,
    Category::NoThreat,
};

/// Zero-based position in kAllCategories.
constexpr std::size_t index_of(Category c) noexcept { return static_cast<std::size_t>(c) - 1; }

/// "SB-01" ... "SB-13".
std::string_view category_id(Category c) noexcept;
/// Canonical display name, e.g. "Denial of Service / DDoS".
std::string_view display_name(Category c) noexcept;

std::optional<Category> category_from_id(std::string_view id) noexcept;

/// Resolves an SB id or a canonical display name (case-insensitive, whitespace
/// collapsed). Free-form labels are not accepted here; use normalize_threat.
std::optional<Category> resolve_canonical(std::string_view id_or_name);

/// Underlying values order CRITICAL > HIGH > MEDIUM > LOW. The ordering is for
/// display and sorting only; scoring is exact-match.
enum class Severity : std::uint8_t { Low = 0, Medium = 1, High = 2, Critical = 3 };

inline constexpr std::array<Severity, 4> kAllSeverities = {
    Severity::Critical, Severity::High, Severity::Medium, Severity::Low};

/// "CRITICAL", "HIGH", "MEDIUM", "LOW".
std::string_view severity_name(Severity s) noexcept;
/// Exact level word, case-insensitive.
std::optional<Severity> severity_from_name(std::string_view name);

/// Lowercases ASCII, collapses whitespace runs to one space and trims.
std::string normalize_text(std::string_view raw);

/// Category -> ordered keyword phrases. Immutable once built.
class KeywordTable {
public:
    static constexpr std::string_view kBuiltinVersion = "socbench-v0-keywords-1";

    /// The default table shipped with the tool.
    static const KeywordTable& builtin();

    /// Parses `{ "version", "categories": [ {id, name, keywords} ] }`.
    /// Throws InputError on any structural problem or on a keyword shared by two categories.
    static KeywordTable from_json(const nlohmann::json& doc);
    static KeywordTable load(const std::filesystem::path& path);

    nlohmann::ordered_json to_json() const;

    const std::string& version() const noexcept { return version_; }
    std::span<const std::string> keywords(Category c) const noexcept {
        return entries_[index_of(c)];
    }

    /// Longest keyword contained in normalize_text(raw) wins; ties go to SB id order,
    /// then keyword order within the category.
    /// nullopt means Unmapped.
    std::optional<Category> match(std::string_view raw) const;

private:
    KeywordTable(std::string version, std::array<std::vector<std::string>, kCategoryCount> entries);

    std::string version_;
    std::array<std::vector<std::string>, kCategoryCount> entries_;
};

/// Maps a free-form threat label onto a canonical category; nullopt is Unmapped.
std::optional<Category> normalize_threat(std::string_view raw, const KeywordTable& table);

/// First of the four level words appearing as a whole word in raw; nullopt is Unmapped.
std::optional<Severity> normalize_severity(std::string_view raw);

}  // namespace socbench::taxonomy
