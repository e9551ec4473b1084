#include "socbench/synthgen.hpp"

#include <array>
#include <cstdio>
#include <random>

#include "socbench/error.hpp"

namespace socbench::synthgen {
namespace {

using taxonomy::Category;
using taxonomy::Severity;

constexpr std::string_view kLoopFiller =
    "Jan 12 03:14:07 web01 nginx[2211]: 203.0.113.7 \"GET /index.php?page=1 HTTP/1.1\" 200 512";

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

// "mitre" and "id" are acronyms in the title-cased styles.
std::string title_word(std::string_view w) {
    if (w == "mitre" || w == "id") return upper(w);
    std::string out(w);
    if (!out.empty()) out[0] = static_cast<char>(out[0] - 'a' + 'A');
    return out;
}

std::vector<std::string_view> key_words(std::string_view field) {
    if (field == "threat") return {"threat", "type"};
    if (field == "mitre") return {"mitre", "technique", "id"};
    return {field};
}

std::string styled_value(std::string_view value, KeyCase k) {
    switch (k) {
        case KeyCase::UpperSnake: return upper(value);
        case KeyCase::LowerSnake: return lower(value);
        default: return std::string(value);
    }
}

std::string_view separator_text(Separator s) noexcept {
    switch (s) {
        case Separator::Colon: return ": ";
        case Separator::Hyphen: return " - ";
        case Separator::Equals: return " = ";
    }
    return ": ";
}

std::string title_severity(Severity s) {
    const auto name = taxonomy::severity_name(s);
    return std::string(1, name[0]) + lower(name.substr(1));
}

Severity shifted(Severity s) noexcept {
    switch (s) {
        case Severity::Critical: return Severity::High;
        case Severity::High: return Severity::Medium;
        case Severity::Medium: return Severity::Low;
        case Severity::Low: return Severity::Medium;
    }
    return s;
}

std::string record_id(std::string_view prefix, std::size_t i) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%03zu", i + 1);
    return std::string(prefix) + buf.data();
}

}  // namespace

std::string_view key_case_name(KeyCase k) noexcept {
    switch (k) {
        case KeyCase::UpperSnake: return "UpperSnake";
        case KeyCase::TitleSpace: return "TitleSpace";
        case KeyCase::TitleHyphen: return "TitleHyphen";
        case KeyCase::LowerSnake: return "LowerSnake";
        case KeyCase::TitleUnderscore: return "TitleUnderscore";
    }
    return "";
}

std::string_view separator_name(Separator s) noexcept {
    switch (s) {
        case Separator::Colon: return "Colon";
        case Separator::Hyphen: return "Hyphen";
        case Separator::Equals: return "Equals";
    }
    return "";
}

std::vector<FormatStyle> style_grid() {
    std::vector<FormatStyle> grid;
    for (auto k : kAllKeyCases) {
        for (auto s : kAllSeparators) grid.push_back(FormatStyle{k, s});
    }
    return grid;
}

std::string styled_key(std::string_view field, KeyCase key_case) {
    const auto words = key_words(field);
    std::string_view joiner = "_";
    if (key_case == KeyCase::TitleSpace) joiner = " ";
    if (key_case == KeyCase::TitleHyphen) joiner = "-";

    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) out += joiner;
        switch (key_case) {
            case KeyCase::UpperSnake: out += upper(words[i]); break;
            case KeyCase::LowerSnake: out += words[i]; break;
            default: out += title_word(words[i]); break;
        }
    }
    return out;
}

std::string render_fields(const FieldValues& values, const FormatStyle& style, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto sep = separator_text(style.separator);
    auto line = [&](std::string_view field, std::string_view value) {
        return styled_key(field, style.key_case) + std::string(sep) +
               styled_value(value, style.key_case) + "\n";
    };

    std::string out;
    if (!style.omit_threat) out += line("threat", values.threat);
    if (!style.omit_severity) out += line("severity", values.severity);
    if (!style.omit_mitre && values.mitre) out += line("mitre", *values.mitre);
    out += "Risk Score: " + std::to_string(1 + rng() % 10) + "\n";

    if (style.include_loop) {
        const auto repeats = 2 + rng() % 4;
        for (std::uint64_t i = 0; i < repeats; ++i) {
            out += std::string(extraction::kLoopMarker) + " " + std::string(kLoopFiller) + "\n";
        }
    }
    return out;
}

std::string render_output(const GroundTruthRecord& truth, const FormatStyle& style,
                          std::uint64_t seed) {
    FieldValues v{std::string(taxonomy::display_name(truth.category)),
                  title_severity(truth.severity), truth.mitre_technique};
    return render_fields(v, style, seed);
}

std::string_view representative_technique(Category c) noexcept {
    switch (c) {
        case Category::SqlInjection: return "T1190";
        case Category::CrossSiteScripting: return "T1189";
        case Category::CommandInjection: return "T1059";
        case Category::PathTraversal: return "T1083";
        case Category::LocalFileInclusion: return "T1005";
        case Category::BruteForce: return "T1110";
        case Category::CredentialStuffing: return "T1110.004";
        case Category::Reconnaissance: return "T1595";
        case Category::DenialOfService: return "T1498";
        case Category::DataExfiltration: return "T1041";
        case Category::LateralMovement: return "T1021.004";
        case Category::MalwareC2: return "T1071";
        case Category::NoThreat: return "N/A";
    }
    return "N/A";
}

Dataset build_paper_fixture() {
    struct Row {
        Category truth;
        std::size_t count;
        Severity severity;
        Category predicted;
        std::vector<std::string_view> labels;
    };
    // Evaluation-set rows in reference order. "Windows Threat" and
    // "SSH Brute Force" are OpenSOC-AI labels with no SOC-Bench row of their own.
    const std::vector<Row> rows = {
        {Category::SqlInjection, 8, Severity::High, Category::SqlInjection,
         {"SQL Injection -- UNION", "SQL Injection -- OS Command via SQLi",
          "SQL Injection -- Boolean Blind", "SQL Injection -- Time-Based Blind",
          "SQL Injection -- Error-Based", "SQL Injection -- Stacked Queries", "SQL Injection",
          "SQL Injection -- Second Order"}},
        {Category::DataExfiltration, 7, Severity::Critical, Category::DataExfiltration,
         {"Data Exfiltration -- DNS Tunneling", "Data Exfiltration -- Large Outbound Transfer",
          "Data Exfiltration", "Data Exfiltration -- Cloud Storage Upload"}},
        {Category::MalwareC2, 5, Severity::Critical, Category::MalwareC2,
         {"Windows Threat -- Suspicious PowerShell", "Windows Threat -- LSASS Access",
          "Windows Threat -- Scheduled Task Persistence", "Windows Threat -- Registry Run Key",
          "Windows Threat"}},
        {Category::DenialOfService, 4, Severity::High, Category::DenialOfService,
         {"DDoS -- SYN Flood", "Denial of Service -- HTTP Flood", "DDoS",
          "DDoS -- UDP Amplification"}},
        {Category::PathTraversal, 4, Severity::Medium, Category::PathTraversal,
         {"Directory Traversal", "Path Traversal -- Encoded Dot-Dot-Slash",
          "Directory Traversal -- /etc/passwd", "Path Traversal"}},
        {Category::Reconnaissance, 4, Severity::Low, Category::BruteForce,
         {"Brute Force", "Brute Force Attack"}},
        {Category::BruteForce, 4, Severity::Medium, Category::CredentialStuffing,
         {"Credential Stuffing", "Credential Stuffing Attack"}},
        {Category::CredentialStuffing, 4, Severity::High, Category::BruteForce,
         {"Brute Force", "Brute Force Attack"}},
        {Category::LateralMovement, 4, Severity::High, Category::LateralMovement,
         {"SSH Brute Force", "SSH Brute Force -- Root Login Attempts"}},
        {Category::LocalFileInclusion, 3, Severity::Medium, Category::LocalFileInclusion,
         {"Local File Inclusion", "Local File Inclusion -- php://filter", "LFI"}},
        {Category::NoThreat, 1, Severity::Low, Category::NoThreat, {"Normal Traffic"}},
        {Category::CommandInjection, 1, Severity::Critical, Category::CommandInjection,
         {"Command Injection"}},
        {Category::CrossSiteScripting, 1, Severity::Medium, Category::CrossSiteScripting,
         {"Cross-Site Scripting -- Reflected"}},
    };

    constexpr std::size_t kTotal = 50;
    constexpr std::size_t kSeverityMisses = 21;
    // Wrong severity on indices = 0 or 1 (mod 5), then 2 (mod 5), ... until 21 are placed.
    std::array<bool, kTotal> wrong_severity{};
    std::size_t placed = 0;
    for (std::size_t residue = 0; residue < 5 && placed < kSeverityMisses; ++residue) {
        for (std::size_t i = residue; i < kTotal && placed < kSeverityMisses; i += 5) {
            wrong_severity[i] = true;
            ++placed;
        }
    }

    Dataset ds;
    std::size_t index = 0;
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.count; ++k, ++index) {
            GroundTruthRecord truth{record_id("eval-", index), row.truth, row.severity,
                                    std::nullopt};
            if (row.truth != Category::NoThreat) {
                truth.mitre_technique = std::string(representative_technique(row.truth));
            }

            FormatStyle style{KeyCase::TitleSpace, Separator::Colon};
            style.include_loop = row.predicted != row.truth && k < 2;

            const auto severity = wrong_severity[index] ? shifted(row.severity) : row.severity;
            FieldValues values{std::string(row.labels[k % row.labels.size()]),
                               title_severity(severity),
                               std::string(representative_technique(row.predicted))};
            ds.predictions.push_back({truth.id, render_fields(values, style, index)});
            ds.truth.push_back(std::move(truth));
        }
    }
    return ds;
}

RunMetadata paper_fixture_metadata() {
    RunMetadata m;
    m.max_new_tokens = 120;
    m.do_sample = false;
    m.parser_type = extraction::ParserKind::Fuzzy;
    m.normalization_version = std::string(taxonomy::KeywordTable::kBuiltinVersion);
    m.post_processing = std::vector<std::string>{"loop_truncation"};
    return m;
}

Dataset random_dataset(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    constexpr std::array<std::string_view, 4> blanks = {"", "   \n", "\n\t\n",
                                                        "### Input: echoed prompt\n"};

    Dataset ds;
    for (std::size_t i = 0; i < n; ++i) {
        const auto category = taxonomy::kAllCategories[pick(taxonomy::kCategoryCount)];
        const auto severity = taxonomy::kAllSeverities[pick(4)];
        GroundTruthRecord truth{"rand-" + std::to_string(seed) + "-" + std::to_string(i),
                                category, severity,
                                std::string(representative_technique(category))};

        FormatStyle style{kAllKeyCases[pick(5)], kAllSeparators[pick(3)]};
        style.include_loop = pick(4) == 0;
        style.omit_threat = pick(8) == 0;
        style.omit_severity = pick(8) == 0;
        style.omit_mitre = pick(8) == 0;

        FieldValues values{std::string(taxonomy::display_name(category)), title_severity(severity),
                           truth.mitre_technique};
        std::string raw;
        switch (pick(10)) {
            case 0: raw = std::string(blanks[pick(blanks.size())]); break;
            case 1:
            case 2: {
                const auto other =
                    taxonomy::kAllCategories[(taxonomy::index_of(category) + 1 + pick(12)) %
                                             taxonomy::kCategoryCount];
                values.threat = std::string(taxonomy::display_name(other));
                raw = render_fields(values, style, rng());
                break;
            }
            case 3:
                values.threat = "Unknown Anomaly";
                raw = render_fields(values, style, rng());
                break;
            default: raw = render_fields(values, style, rng()); break;
        }
        ds.predictions.push_back({truth.id, std::move(raw)});
        ds.truth.push_back(std::move(truth));
    }
    return ds;
}

}  // namespace socbench::synthgen

namespace socbench::synthgen {

GridRecall measure_grid_recall(std::size_t samples_per_style, std::uint64_t seed,
                               const taxonomy::KeywordTable& table) {
    if (samples_per_style == 0) throw Error("samples must be at least 1");
    std::mt19937_64 rng(seed);

    GridRecall out;
    out.seed = seed;
    out.samples_per_style = samples_per_style;

    auto measure = [&](FieldRecall& r, const extraction::ExtractedFields& f,
                       const GroundTruthRecord& truth) {
        if (f.threat) {
            ++r.threat;
            if (taxonomy::normalize_threat(*f.threat, table) == truth.category) ++r.threat_normalized;
        }
        if (f.severity) {
            ++r.severity;
            if (taxonomy::normalize_severity(*f.severity) == truth.severity) ++r.severity_normalized;
        }
        if (f.mitre) ++r.mitre;
    };

    std::size_t fields = 0, fuzzy_found = 0, fuzzy_values = 0, fuzzy_normalized = 0;
    std::size_t strict_threat = 0, strict_severity = 0, total = 0;
    for (auto style : style_grid()) {
        StyleRecall sr{style, samples_per_style, {}, {}};
        for (std::size_t i = 0; i < samples_per_style; ++i) {
            const auto category = taxonomy::kAllCategories[rng() % taxonomy::kCategoryCount];
            const GroundTruthRecord truth{"fuzz", category, taxonomy::kAllSeverities[rng() % 4],
                                          std::string(representative_technique(category))};
            style.include_loop = i % 2 == 1;
            const auto raw = render_output(truth, style, rng());
            measure(sr.fuzzy, extraction::fuzzy_extract(raw), truth);
            measure(sr.strict, extraction::strict_extract(raw), truth);
        }
        fields += 3 * samples_per_style;
        fuzzy_found += sr.fuzzy.threat + sr.fuzzy.severity + sr.fuzzy.mitre;
        fuzzy_values += 2 * samples_per_style;
        fuzzy_normalized += sr.fuzzy.threat_normalized + sr.fuzzy.severity_normalized;
        strict_threat += sr.strict.threat;
        strict_severity += sr.strict.severity;
        total += samples_per_style;
        out.styles.push_back(sr);
    }
    out.fuzzy_recall = static_cast<double>(fuzzy_found) / static_cast<double>(fields);
    out.fuzzy_normalization_accuracy =
        static_cast<double>(fuzzy_normalized) / static_cast<double>(fuzzy_values);
    out.strict_threat_recall = static_cast<double>(strict_threat) / static_cast<double>(total);
    out.strict_severity_recall = static_cast<double>(strict_severity) / static_cast<double>(total);
    return out;
}

}  // namespace socbench::synthgen
