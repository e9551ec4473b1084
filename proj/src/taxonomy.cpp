#include "socbench/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "socbench/error.hpp"

namespace socbench::taxonomy {
namespace {

struct CategoryInfo {
    std::string_view id;
    std::string_view name;
};

constexpr std::array<CategoryInfo, kCategoryCount> kInfo = {{
    {"SB-01", "SQL Injection"},
    {"SB-02", "Cross-Site Scripting (XSS)"},
    {"SB-03", "Command Injection"},
    {"SB-04", "Path / Directory Traversal"},
    {"SB-05", "Local File Inclusion (LFI)"},
    {"SB-06", "Brute Force"},
    {"SB-07", "Credential Stuffing"},
    {"SB-08", "Reconnaissance / Scanning"},
    {"SB-09", "Denial of Service / DDoS"},
    {"SB-10", "Data Exfiltration"},
    {"SB-11", "Lateral Movement / Privilege Escalation"},
    {"SB-12", "Malware / C2 Activity"},
    {"SB-13", "No Threat / Normal Traffic"},
}};

// Display name first, then aliases. "ssh brute force" lives under SB-11 and
// must outrank the shorter SB-06 "brute force" through the longest-match rule.
const std::array<std::vector<std::string>, kCategoryCount>& builtin_keywords() {
    static const std::array<std::vector<std::string>, kCategoryCount> table = {{
        {"sql injection", "sql-injection", "sqli"},
        {"cross-site scripting (xss)", "cross-site scripting", "cross site scripting", "xss"},
        {"command injection", "os command injection", "shell injection", "remote code execution"},
        {"path / directory traversal", "path traversal", "directory traversal", "dot-dot-slash"},
        {"local file inclusion (lfi)", "local file inclusion", "file inclusion", "lfi"},
        {"brute force", "brute-force", "bruteforce", "password guessing"},
        {"credential stuffing", "credential-stuffing", "credential reuse"},
        {"reconnaissance / scanning", "reconnaissance", "recon", "scanning", "port scan",
         "network scan", "vulnerability scan"},
        {"denial of service / ddos", "denial of service", "denial-of-service", "ddos",
         "dos attack", "syn flood", "http flood"},
        {"data exfiltration", "exfiltration", "data exfil", "data theft"},
        {"lateral movement / privilege escalation", "lateral movement", "privilege escalation",
         "ssh brute force", "ssh brute-force", "pass-the-hash"},
        {"malware / c2 activity", "malware", "c2 activity", "command and control",
         "command-and-control", "windows threat", "ransomware", "trojan", "botnet"},
        {"no threat / normal traffic", "no threat", "normal traffic", "benign"},
    }};
    return table;
}

bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) noexcept {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_alpha(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

std::string_view category_id(Category c) noexcept { return kInfo[index_of(c)].id; }

std::string_view display_name(Category c) noexcept { return kInfo[index_of(c)].name; }

std::optional<Category> category_from_id(std::string_view id) noexcept {
    for (auto c : kAllCategories) {
        if (kInfo[index_of(c)].id == id) return c;
    }
    return std::nullopt;
}

std::optional<Category> resolve_canonical(std::string_view id_or_name) {
    const std::string key = normalize_text(id_or_name);
    for (auto c : kAllCategories) {
        if (key == normalize_text(category_id(c)) || key == normalize_text(display_name(c))) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view severity_name(Severity s) noexcept {
    switch (s) {
        case Severity::Critical: return "CRITICAL";
        case Severity::High: return "HIGH";
        case Severity::Medium: return "MEDIUM";
        case Severity::Low: return "LOW";
    }
    return "";
}

std::optional<Severity> severity_from_name(std::string_view name) {
    const std::string key = normalize_text(name);
    for (auto s : kAllSeverities) {
        if (key == normalize_text(severity_name(s))) return s;
    }
    return std::nullopt;
}

std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(ascii_lower(c));
    }
    return out;
}

KeywordTable::KeywordTable(std::string version,
                           std::array<std::vector<std::string>, kCategoryCount> entries)
    : version_(std::move(version)), entries_(std::move(entries)) {}

const KeywordTable& KeywordTable::builtin() {
    static const KeywordTable table(std::string(kBuiltinVersion), builtin_keywords());
    return table;
}

KeywordTable KeywordTable::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InputError("keyword table: document must be a JSON object");
    if (!doc.contains("version") || !doc["version"].is_string() ||
        doc["version"].get<std::string>().empty()) {
        throw InputError("keyword table: missing or empty \"version\"");
    }
    if (!doc.contains("categories") || !doc["categories"].is_array()) {
        throw InputError("keyword table: missing \"categories\" array");
    }

    std::array<std::vector<std::string>, kCategoryCount> entries;
    std::array<bool, kCategoryCount> seen{};
    std::map<std::string, Category> owner;

    for (const auto& item : doc["categories"]) {
        if (!item.is_object() || !item.contains("id") || !item["id"].is_string()) {
            throw InputError("keyword table: every category needs a string \"id\"");
        }
        const auto id = item["id"].get<std::string>();
        const auto category = category_from_id(id);
        if (!category) throw InputError("keyword table: unknown category id \"" + id + "\"");
        const auto idx = index_of(*category);
        if (seen[idx]) throw InputError("keyword table: duplicate category id \"" + id + "\"");
        seen[idx] = true;

        if (item.contains("name")) {
            if (!item["name"].is_string() ||
                normalize_text(item["name"].get<std::string>()) !=
                    normalize_text(display_name(*category))) {
                throw InputError("keyword table: name of " + id + " must be \"" +
                                 std::string(display_name(*category)) + "\"");
            }
        }
        if (!item.contains("keywords") || !item["keywords"].is_array()) {
            throw InputError("keyword table: " + id + " has no \"keywords\" array");
        }

        auto& list = entries[idx];
        // The display name is always a keyword so every category maps onto itself.
        list.push_back(normalize_text(display_name(*category)));
        for (const auto& kw : item["keywords"]) {
            if (!kw.is_string()) throw InputError("keyword table: non-string keyword in " + id);
            auto norm = normalize_text(kw.get<std::string>());
            if (norm.empty()) throw InputError("keyword table: empty keyword in " + id);
            if (std::find(list.begin(), list.end(), norm) == list.end()) {
                list.push_back(std::move(norm));
            }
        }
        for (const auto& kw : list) {
            auto [it, inserted] = owner.emplace(kw, *category);
            if (!inserted && it->second != *category) {
                throw InputError("keyword table: keyword \"" + kw + "\" appears in both " +
                                 std::string(category_id(it->second)) + " and " + id);
            }
        }
    }

    for (auto c : kAllCategories) {
        if (!seen[index_of(c)]) {
            throw InputError("keyword table: missing category " + std::string(category_id(c)));
        }
    }
    return KeywordTable(doc["version"].get<std::string>(), std::move(entries));
}

KeywordTable KeywordTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open keyword table: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed keyword table " + path.string() + ": " + e.what());
    }
    return from_json(doc);
}

nlohmann::ordered_json KeywordTable::to_json() const {
    nlohmann::ordered_json doc;
    doc["version"] = version_;
    auto& cats = doc["categories"] = nlohmann::ordered_json::array();
    for (auto c : kAllCategories) {
        nlohmann::ordered_json item;
        item["id"] = category_id(c);
        item["name"] = display_name(c);
        item["keywords"] = entries_[index_of(c)];
        cats.push_back(std::move(item));
    }
    return doc;
}

std::optional<Category> KeywordTable::match(std::string_view raw) const {
    const std::string text = normalize_text(raw);
    std::optional<Category> best;
    std::size_t best_len = 0;
    for (auto c : kAllCategories) {
        for (const auto& kw : entries_[index_of(c)]) {
            if (kw.size() > best_len && text.find(kw) != std::string::npos) {
                best = c;
                best_len = kw.size();
            }
        }
    }
    return best;
}

std::optional<Category> normalize_threat(std::string_view raw, const KeywordTable& table) {
    return table.match(raw);
}

std::optional<Severity> normalize_severity(std::string_view raw) {
    std::size_t i = 0;
    while (i < raw.size()) {
        if (!is_alpha(raw[i])) {
            ++i;
            continue;
        }
        std::string word;
        while (i < raw.size() && is_alpha(raw[i])) word.push_back(ascii_lower(raw[i++]));
        for (auto s : kAllSeverities) {
            if (word == normalize_text(severity_name(s))) return s;
        }
    }
    return std::nullopt;
}

}  // namespace socbench::taxonomy
