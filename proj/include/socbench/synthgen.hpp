#pragma once

// Synthetic model output with controlled key casing, separators, omissions
// and prompt-repetition loops. Used as a ground-truth oracle for the parsers
// and to build the 50-record reference fixture.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socbench/metadata.hpp"
#include "socbench/scoring.hpp"

namespace socbench::synthgen {

using scoring::GroundTruthRecord;
using scoring::Prediction;

/// THREAT_TYPE, Threat Type, Threat-Type, threat_type, Threat_Type.
enum class KeyCase : std::uint8_t { UpperSnake, TitleSpace, TitleHyphen, LowerSnake, TitleUnderscore };
enum class Separator : std::uint8_t { Colon, Hyphen, Equals };

inline constexpr KeyCase kAllKeyCases[] = {KeyCase::UpperSnake, KeyCase::TitleSpace,
                                           KeyCase::TitleHyphen, KeyCase::LowerSnake,
                                           KeyCase::TitleUnderscore};
inline constexpr Separator kAllSeparators[] = {Separator::Colon, Separator::Hyphen,
                                               Separator::Equals};

std::string_view key_case_name(KeyCase k) noexcept;
std::string_view separator_name(Separator s) noexcept;

struct FormatStyle {
    KeyCase key_case = KeyCase::TitleSpace;
    Separator separator = Separator::Colon;
    bool include_loop = false;
    bool omit_threat = false;
    bool omit_severity = false;
    bool omit_mitre = false;

    bool omits_anything() const noexcept { return omit_threat || omit_severity || omit_mitre; }
};

/// The 15 key-case x separator combinations, no loops, no omissions.
std::vector<FormatStyle> style_grid();

/// Values to print; the style decides key spelling and value casing.
struct FieldValues {
    std::string threat;
    std::string severity;
    std::optional<std::string> mitre;
};

/// Styled field key, e.g. "Threat-Type" or "MITRE_TECHNIQUE_ID".
std::string styled_key(std::string_view field, KeyCase key_case);

std::string render_fields(const FieldValues& values, const FormatStyle& style, std::uint64_t seed);

/// Renders the record's canonical display values. Deterministic in (truth, style, seed).
std::string render_output(const GroundTruthRecord& truth, const FormatStyle& style,
                          std::uint64_t seed);

/// A plausible ATT&CK technique id for each category ("N/A" for no threat).
std::string_view representative_technique(taxonomy::Category c) noexcept;

struct Dataset {
    std::vector<GroundTruthRecord> truth;
    std::vector<Prediction> predictions;
};

/// 50 records shaped like the reference evaluation set: fuzzy scoring gives
/// 38/50 threat accuracy with Reconnaissance, Brute Force and Credential
/// Stuffing wrong, strict scoring gives 0/50, and severity is right for 29/50
/// under both parsers. Per-record texts are synthetic.
Dataset build_paper_fixture();

/// Inference settings of the reference run. Temperature was not reported,
/// so it is left unset.
RunMetadata paper_fixture_metadata();

/// Random dataset mixing every style, omissions, loops, blank outputs,
/// wrong-category and unmappable predictions. Deterministic in the seed.
Dataset random_dataset(std::uint64_t seed, std::size_t n);

struct FieldRecall {
    std::size_t threat = 0;
    std::size_t severity = 0;
    std::size_t mitre = 0;
    /// Extracted and normalized back to the rendered category / severity.
    std::size_t threat_normalized = 0;
    std::size_t severity_normalized = 0;
};

struct StyleRecall {
    FormatStyle style;
    std::size_t samples = 0;
    FieldRecall fuzzy;
    FieldRecall strict;
};

inline constexpr std::string_view kGridRecallSchema = "socbench.fuzz_report/1";

struct GridRecall {
    std::uint64_t seed = 0;
    std::size_t samples_per_style = 0;
    std::vector<StyleRecall> styles;
    /// Fraction of rendered fields (threat, severity, mitre) the fuzzy parser recovered.
    double fuzzy_recall = 0.0;
    /// Fraction of threat and severity values that normalized back to the truth.
    double fuzzy_normalization_accuracy = 0.0;
    double strict_threat_recall = 0.0;
    double strict_severity_recall = 0.0;
};

/// Renders `samples_per_style` random records in every grid style (odd samples
/// carry a prompt-repetition loop) and measures what each parser recovers.
/// Throws Error when samples_per_style is 0.
GridRecall measure_grid_recall(std::size_t samples_per_style, std::uint64_t seed,
                               const taxonomy::KeywordTable& table);

}  // namespace socbench::synthgen
