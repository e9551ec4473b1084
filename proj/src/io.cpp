#include "socbench/io.hpp"

#include <fstream>
#include <set>

#include "socbench/error.hpp"

namespace socbench::io {
namespace {

using extraction::ParserKind;
using taxonomy::Category;

const nlohmann::json& member(const nlohmann::json& obj, const char* key, std::string_view where) {
    if (!obj.contains(key)) {
        throw InputError(std::string(where) + ": missing \"" + key + "\"");
    }
    return obj[key];
}

std::string string_member(const nlohmann::json& obj, const char* key, std::string_view where) {
    const auto& v = member(obj, key, where);
    if (!v.is_string()) throw InputError(std::string(where) + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

std::string record_where(std::string_view file, std::size_t index) {
    return std::string(file) + " record " + std::to_string(index);
}

bool present(const nlohmann::json& obj, const char* key) {
    return obj.contains(key) && !obj[key].is_null();
}

Category category_member(const nlohmann::json& obj, std::string_view where) {
    const auto text = string_member(obj, "category", where);
    const auto cat = taxonomy::category_from_id(text);
    if (!cat) throw InputError(std::string(where) + ": unknown category id \"" + text + "\"");
    return *cat;
}

json category_ref(Category c) {
    json j;
    j["category"] = taxonomy::category_id(c);
    j["name"] = taxonomy::display_name(c);
    return j;
}

json tally_json(const scoring::OutcomeTally& t) {
    json j;
    j["mapped"] = t.mapped;
    j["unmapped"] = t.unmapped;
    j["absent"] = t.absent;
    return j;
}

scoring::OutcomeTally tally_from(const nlohmann::json& j) {
    return {j.at("mapped").get<std::size_t>(), j.at("unmapped").get<std::size_t>(),
            j.at("absent").get<std::size_t>()};
}

ParserKind parser_from(const nlohmann::json& v, std::string_view where) {
    const auto kind = v.is_string() ? extraction::parse_parser_kind(v.get<std::string>())
                                    : std::nullopt;
    if (!kind) throw InputError(std::string(where) + ": parser must be \"strict\" or \"fuzzy\"");
    return *kind;
}

}  // namespace

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw InputError("failed writing " + path.string());
}

std::vector<scoring::Prediction> parse_predictions(const nlohmann::json& doc) {
    if (!doc.is_array()) throw InputError("predictions: top level must be a JSON array");
    std::vector<scoring::Prediction> out;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto where = record_where("predictions", i);
        if (!doc[i].is_object()) throw InputError(where + ": must be an object");
        auto id = string_member(doc[i], "id", where);
        if (id.empty()) throw InputError(where + ": empty id");
        if (!ids.insert(id).second) throw InputError("predictions: duplicate id \"" + id + "\"");
        out.push_back({std::move(id), string_member(doc[i], "raw_output", where)});
    }
    return out;
}

std::vector<scoring::Prediction> load_predictions(const std::filesystem::path& path) {
    return parse_predictions(read_json_file(path));
}

json predictions_to_json(std::span<const scoring::Prediction> predictions) {
    json arr = json::array();
    for (const auto& p : predictions) {
        json j;
        j["id"] = p.id;
        j["raw_output"] = p.raw_output;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<scoring::GroundTruthRecord> parse_ground_truth(const nlohmann::json& doc) {
    if (!doc.is_array()) throw InputError("ground truth: top level must be a JSON array");
    std::vector<scoring::GroundTruthRecord> out;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto where = record_where("ground truth", i);
        const auto& item = doc[i];
        if (!item.is_object()) throw InputError(where + ": must be an object");

        auto id = string_member(item, "id", where);
        if (id.empty()) throw InputError(where + ": empty id");
        if (!ids.insert(id).second) throw InputError("ground truth: duplicate id \"" + id + "\"");

        const auto cat_text = string_member(item, "category", where);
        const auto category = taxonomy::resolve_canonical(cat_text);
        if (!category) {
            throw InputError(where + " (" + id + "): category \"" + cat_text +
                             "\" is not a canonical SB id or name");
        }
        const auto sev_text = string_member(item, "severity", where);
        const auto severity = taxonomy::severity_from_name(sev_text);
        if (!severity) {
            throw InputError(where + " (" + id + "): unknown severity \"" + sev_text + "\"");
        }

        scoring::GroundTruthRecord rec{std::move(id), *category, *severity, std::nullopt};
        if (present(item, "mitre_technique")) {
            rec.mitre_technique = string_member(item, "mitre_technique", where);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<scoring::GroundTruthRecord> load_ground_truth(const std::filesystem::path& path) {
    return parse_ground_truth(read_json_file(path));
}

json ground_truth_to_json(std::span<const scoring::GroundTruthRecord> truth) {
    json arr = json::array();
    for (const auto& t : truth) {
        json j;
        j["id"] = t.id;
        j["category"] = taxonomy::category_id(t.category);
        j["severity"] = taxonomy::severity_name(t.severity);
        if (t.mitre_technique) j["mitre_technique"] = *t.mitre_technique;
        arr.push_back(std::move(j));
    }
    return arr;
}

RunMetadata parse_metadata(const nlohmann::json& doc) {
    constexpr std::string_view where = "metadata";
    if (!doc.is_object()) throw InputError("metadata: top level must be a JSON object");
    RunMetadata m;
    if (present(doc, "max_new_tokens")) {
        const auto& v = doc["max_new_tokens"];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw InputError("metadata: \"max_new_tokens\" must be a non-negative integer");
        }
        m.max_new_tokens = v.get<std::int64_t>();
    }
    if (present(doc, "temperature")) {
        if (!doc["temperature"].is_number()) {
            throw InputError("metadata: \"temperature\" must be a number");
        }
        m.temperature = doc["temperature"].get<double>();
    }
    if (present(doc, "do_sample")) {
        if (!doc["do_sample"].is_boolean()) {
            throw InputError("metadata: \"do_sample\" must be a boolean");
        }
        m.do_sample = doc["do_sample"].get<bool>();
    }
    if (present(doc, "parser_type")) m.parser_type = parser_from(doc["parser_type"], where);
    if (present(doc, "normalization_version")) {
        m.normalization_version = string_member(doc, "normalization_version", where);
    }
    if (present(doc, "post_processing")) {
        const auto& v = doc["post_processing"];
        if (!v.is_array()) throw InputError("metadata: \"post_processing\" must be an array");
        std::vector<std::string> steps;
        for (const auto& s : v) {
            if (!s.is_string()) throw InputError("metadata: post_processing entries must be strings");
            steps.push_back(s.get<std::string>());
        }
        m.post_processing = std::move(steps);
    }
    return m;
}

RunMetadata load_metadata(const std::filesystem::path& path) {
    return parse_metadata(read_json_file(path));
}

json metadata_to_json(const RunMetadata& meta) {
    json j = json::object();
    if (meta.max_new_tokens) j["max_new_tokens"] = *meta.max_new_tokens;
    if (meta.temperature) j["temperature"] = *meta.temperature;
    if (meta.do_sample) j["do_sample"] = *meta.do_sample;
    if (meta.parser_type) j["parser_type"] = extraction::parser_name(*meta.parser_type);
    if (meta.normalization_version) j["normalization_version"] = *meta.normalization_version;
    if (meta.post_processing) j["post_processing"] = *meta.post_processing;
    return j;
}

json to_json(const scoring::ScoreReport& r) {
    json j;
    j["schema_version"] = scoring::kScoreReportSchema;
    j["parser"] = extraction::parser_name(r.parser);
    j["confidence"] = r.confidence;
    j["n_total"] = r.n_total;
    j["micro_threat_accuracy"] = r.micro_threat_accuracy;
    j["macro_threat_accuracy"] = r.macro_threat_accuracy;
    j["macro_class_count"] = r.macro_class_count;
    j["severity_accuracy"] = r.severity_accuracy;
    j["mitre_extraction_rate"] = r.mitre_extraction_rate;
    j["threat_correct"] = r.threat_correct;
    j["severity_correct"] = r.severity_correct;
    j["mitre_extracted"] = r.mitre_extracted;
    j["threat_outcomes"] = tally_json(r.threat_outcomes);
    j["severity_outcomes"] = tally_json(r.severity_outcomes);

    json per_class = json::array();
    for (const auto& c : r.per_class) {
        json e = category_ref(c.category);
        e["n"] = c.n;
        e["correct"] = c.correct;
        e["accuracy"] = c.accuracy;
        e["wilson_low"] = c.wilson_low;
        e["wilson_high"] = c.wilson_high;
        per_class.push_back(std::move(e));
    }
    j["per_class"] = std::move(per_class);

    json inspection = json::array();
    for (const auto& f : r.failure_inspection) {
        json e = category_ref(f.category);
        e["n"] = f.n;
        e["correct"] = f.correct;
        e["accuracy"] = f.accuracy;
        e["inspected"] = f.inspected;
        if (f.inspected) {
            e["wrong_prediction"] = f.wrong_prediction;
            e["empty_prediction"] = f.empty_prediction;
            e["extraction_failure"] = f.extraction_failure;
        }
        inspection.push_back(std::move(e));
    }
    j["failure_inspection"] = std::move(inspection);
    j["metadata"] = metadata_to_json(r.metadata);
    return j;
}

scoring::ScoreReport score_report_from_json(const nlohmann::json& doc) {
    constexpr std::string_view where = "score report";
    if (!doc.is_object()) throw InputError("score report: top level must be a JSON object");
    // Accept the CLI envelope as well as a bare report.
    const auto& j = doc.contains("report") ? doc["report"] : doc;
    if (string_member(j, "schema_version", where) != scoring::kScoreReportSchema) {
        throw InputError("score report: unsupported schema_version");
    }
    try {
        scoring::ScoreReport r;
        r.parser = parser_from(j.at("parser"), where);
        r.confidence = j.at("confidence").get<double>();
        r.n_total = j.at("n_total").get<std::size_t>();
        r.micro_threat_accuracy = j.at("micro_threat_accuracy").get<double>();
        r.macro_threat_accuracy = j.at("macro_threat_accuracy").get<double>();
        r.macro_class_count = j.at("macro_class_count").get<std::size_t>();
        r.severity_accuracy = j.at("severity_accuracy").get<double>();
        r.mitre_extraction_rate = j.at("mitre_extraction_rate").get<double>();
        r.threat_correct = j.at("threat_correct").get<std::size_t>();
        r.severity_correct = j.at("severity_correct").get<std::size_t>();
        r.mitre_extracted = j.at("mitre_extracted").get<std::size_t>();
        r.threat_outcomes = tally_from(j.at("threat_outcomes"));
        r.severity_outcomes = tally_from(j.at("severity_outcomes"));
        for (const auto& e : j.at("per_class")) {
            r.per_class.push_back({category_member(e, where), e.at("n").get<std::size_t>(),
                                   e.at("correct").get<std::size_t>(),
                                   e.at("accuracy").get<double>(),
                                   e.at("wilson_low").get<double>(),
                                   e.at("wilson_high").get<double>()});
        }
        for (const auto& e : j.at("failure_inspection")) {
            scoring::ClassFailureSummary f{category_member(e, where),
                                           e.at("n").get<std::size_t>(),
                                           e.at("correct").get<std::size_t>(),
                                           e.at("accuracy").get<double>(),
                                           e.at("inspected").get<bool>()};
            if (f.inspected) {
                f.wrong_prediction = e.at("wrong_prediction").get<std::size_t>();
                f.empty_prediction = e.at("empty_prediction").get<std::size_t>();
                f.extraction_failure = e.at("extraction_failure").get<std::size_t>();
            }
            r.failure_inspection.push_back(f);
        }
        r.metadata = parse_metadata(j.at("metadata"));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("score report: ") + e.what());
    }
}

json to_json(const audit::SuppressionReport& r) {
    json j;
    j["schema_version"] = audit::kSuppressionReportSchema;
    j["n_total"] = r.fuzzy_report.n_total;
    j["threat_delta_pp"] = r.threat_delta_pp;
    j["severity_delta_pp"] = r.severity_delta_pp;
    j["suppressed_count"] = r.suppressed_count;
    j["suppressed_ids"] = r.suppressed_ids;
    j["strict_report"] = to_json(r.strict_report);
    j["fuzzy_report"] = to_json(r.fuzzy_report);
    return j;
}

json to_json(const audit::ComplianceResult& c) {
    json j;
    j["schema_version"] = audit::kComplianceSchema;
    j["all_pass"] = c.all_pass();

    json r1;
    r1["pass"] = c.r1_pass;
    r1["total"] = c.total;
    r1["min_total"] = audit::kMinTotal;
    r1["min_per_class"] = audit::kMinPerClass;
    json shortfalls = json::array();
    for (const auto& s : c.r1_shortfalls) {
        json e = category_ref(s.category);
        e["n"] = s.n;
        shortfalls.push_back(std::move(e));
    }
    r1["shortfalls"] = std::move(shortfalls);
    j["r1"] = std::move(r1);

    json r2;
    r2["pass"] = c.r2_pass;
    r2["primary_parser"] = extraction::parser_name(c.primary_parser);
    j["r2"] = std::move(r2);

    json r3;
    r3["pass"] = c.r3_pass;
    r3["checked"] = c.r3_checked;
    json missing = json::array();
    for (auto cat : c.r3_missing_breakdowns) missing.push_back(category_ref(cat));
    r3["missing_breakdowns"] = std::move(missing);
    j["r3"] = std::move(r3);

    json r4;
    r4["pass"] = c.r4_pass;
    r4["missing"] = c.r4_missing;
    j["r4"] = std::move(r4);
    return j;
}

json to_json(const synthgen::GridRecall& g) {
    auto field_json = [](const synthgen::FieldRecall& f) {
        json j;
        j["threat"] = f.threat;
        j["severity"] = f.severity;
        j["mitre"] = f.mitre;
        j["threat_normalized"] = f.threat_normalized;
        j["severity_normalized"] = f.severity_normalized;
        return j;
    };
    json j;
    j["schema_version"] = synthgen::kGridRecallSchema;
    j["seed"] = g.seed;
    j["samples_per_style"] = g.samples_per_style;
    j["fuzzy_recall"] = g.fuzzy_recall;
    j["fuzzy_normalization_accuracy"] = g.fuzzy_normalization_accuracy;
    j["strict_threat_recall"] = g.strict_threat_recall;
    j["strict_severity_recall"] = g.strict_severity_recall;
    json styles = json::array();
    for (const auto& s : g.styles) {
        json e;
        e["key_case"] = synthgen::key_case_name(s.style.key_case);
        e["separator"] = synthgen::separator_name(s.style.separator);
        e["samples"] = s.samples;
        e["fuzzy"] = field_json(s.fuzzy);
        e["strict"] = field_json(s.strict);
        styles.push_back(std::move(e));
    }
    j["styles"] = std::move(styles);
    return j;
}

}  // namespace socbench::io
