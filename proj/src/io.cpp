#include "assetrank/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "assetrank/errors.hpp"

namespace assetrank {
namespace {

using nlohmann::json;

std::string line_where(std::size_t line) { return "line " + std::to_string(line); }

std::string file_stem(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name.resize(dot);
    return name;
}

// --- JSONL asset parsing -----------------------------------------------------

bool expect_keys(const json& obj, std::initializer_list<const char*> allowed,
                 const std::string& where, const std::string& ctx, ValidationReport& rep) {
    bool ok = true;
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (key == k) { known = true; break; }
        }
        if (!known) {
            rep.add(where, ctx + ": unknown key '" + key + "'");
            ok = false;
        }
    }
    return ok;
}

std::optional<std::string> get_string(const json& obj, const char* key, bool required,
                                      const std::string& where, ValidationReport& rep) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) rep.add(where, std::string("missing required key '") + key + "'");
        return std::nullopt;
    }
    if (!it->is_string()) {
        rep.add(where, std::string("'") + key + "' must be a string");
        return std::nullopt;
    }
    return it->get<std::string>();
}

std::optional<double> get_number(const json& obj, const char* key, const std::string& where,
                                 ValidationReport& rep) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_number()) {
        rep.add(where, std::string("'") + key + "' must be a number");
        return std::nullopt;
    }
    return it->get<double>();
}

std::optional<Severity> get_severity(const json& obj, const char* key, bool required,
                                     const std::string& where, ValidationReport& rep) {
    auto text = get_string(obj, key, required, where, rep);
    if (!text) return std::nullopt;
    auto sev = parse_severity(*text);
    if (!sev) {
        rep.add(where, std::string("unknown severity '") + *text + "' for '" + key +
                           "' (expected INFO|LOW|MEDIUM|HIGH|CRITICAL)");
    }
    return sev;
}

std::optional<std::vector<CriterionAssessment>> parse_criteria(const json& arr, const char* key,
                                                               const std::string& where,
                                                               ValidationReport& rep) {
    if (!arr.is_array()) {
        rep.add(where, std::string("'") + key + "' must be an array");
        return std::nullopt;
    }
    std::vector<CriterionAssessment> out;
    bool ok = true;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        std::string ewhere = where + " " + key + "[" + std::to_string(i) + "]";
        if (!e.is_object()) {
            rep.add(ewhere, "assessment must be an object");
            ok = false;
            continue;
        }
        if (!expect_keys(e, {"criterion_id", "label", "score", "confidence"}, ewhere,
                         "assessment", rep)) {
            ok = false;
            continue;
        }
        CriterionAssessment ca;
        auto cid = get_string(e, "criterion_id", true, ewhere, rep);
        auto label = get_string(e, "label", true, ewhere, rep);
        if (!cid || !label) {
            ok = false;
            continue;
        }
        ca.criterion_id = *cid;
        ca.label = *label;
        ca.score = get_number(e, "score", ewhere, rep);
        if (auto conf = get_number(e, "confidence", ewhere, rep)) ca.confidence = *conf;
        out.push_back(std::move(ca));
    }
    if (!ok) return std::nullopt;
    return out;
}

std::optional<Asset> parse_asset_json(const json& obj, std::size_t line, ValidationReport& rep) {
    const std::string where = line_where(line);
    if (!obj.is_object()) {
        rep.add(where, "expected a JSON object");
        return std::nullopt;
    }
    if (!expect_keys(obj,
                     {"asset_id", "vendor", "asset_type", "findings", "attack_vectors",
                      "structural", "bfc_criteria", "dc_criteria", "metadata_tags"},
                     where, "asset", rep)) {
        return std::nullopt;
    }

    Asset a;
    bool ok = true;
    auto need = [&](const char* key) -> std::string {
        auto v = get_string(obj, key, true, where, rep);
        if (!v) { ok = false; return {}; }
        return *v;
    };
    a.asset_id = need("asset_id");
    a.vendor = need("vendor");
    a.asset_type = need("asset_type");

    if (auto it = obj.find("findings"); it != obj.end()) {
        if (!it->is_array()) {
            rep.add(where, "'findings' must be an array");
            ok = false;
        } else {
            for (std::size_t i = 0; i < it->size(); ++i) {
                const json& fj = (*it)[i];
                std::string fwhere = where + " findings[" + std::to_string(i) + "]";
                if (!fj.is_object()) {
                    rep.add(fwhere, "finding must be an object");
                    ok = false;
                    continue;
                }
                if (!expect_keys(fj,
                                 {"finding_id", "control_id", "original_severity",
                                  "adjusted_severity"},
                                 fwhere, "finding", rep)) {
                    ok = false;
                    continue;
                }
                Finding f;
                auto fid = get_string(fj, "finding_id", true, fwhere, rep);
                auto ctrl = get_string(fj, "control_id", true, fwhere, rep);
                auto orig = get_severity(fj, "original_severity", true, fwhere, rep);
                if (!fid || !ctrl || !orig) {
                    ok = false;
                    continue;
                }
                f.finding_id = *fid;
                f.control_id = *ctrl;
                f.original_severity = *orig;
                if (fj.contains("adjusted_severity")) {
                    auto adj = get_severity(fj, "adjusted_severity", false, fwhere, rep);
                    if (!adj) {
                        ok = false;
                        continue;
                    }
                    f.adjusted_severity = adj;
                }
                a.findings.push_back(std::move(f));
            }
        }
    }

    if (auto it = obj.find("attack_vectors"); it != obj.end()) {
        std::string vwhere = where + " attack_vectors";
        if (!it->is_object()) {
            rep.add(vwhere, "'attack_vectors' must be an object");
            ok = false;
        } else if (!expect_keys(*it, {"path_count", "pattern_ids"}, vwhere, "attack_vectors",
                                rep)) {
            ok = false;
        } else {
            if (auto pc = it->find("path_count"); pc != it->end()) {
                if (!pc->is_number_integer() && !pc->is_number_unsigned()) {
                    rep.add(vwhere, "'path_count' must be an integer");
                    ok = false;
                } else {
                    a.attack_vectors.path_count = pc->get<std::int64_t>();
                }
            }
            if (auto ids = it->find("pattern_ids"); ids != it->end()) {
                if (!ids->is_array()) {
                    rep.add(vwhere, "'pattern_ids' must be an array of strings");
                    ok = false;
                } else {
                    for (const json& id : *ids) {
                        if (!id.is_string()) {
                            rep.add(vwhere, "'pattern_ids' must be an array of strings");
                            ok = false;
                            break;
                        }
                        a.attack_vectors.pattern_ids.push_back(id.get<std::string>());
                    }
                }
            }
        }
    }

    if (auto it = obj.find("structural"); it != obj.end()) {
        std::string swhere = where + " structural";
        if (!it->is_object()) {
            rep.add(swhere, "'structural' must be an object");
            ok = false;
        } else if (!expect_keys(*it,
                                {"anomaly_raw", "anomaly_percentile", "blast_raw",
                                 "blast_percentile"},
                                swhere, "structural", rep)) {
            ok = false;
        } else {
            a.structural.anomaly_raw = get_number(*it, "anomaly_raw", swhere, rep);
            a.structural.anomaly_percentile = get_number(*it, "anomaly_percentile", swhere, rep);
            a.structural.blast_raw = get_number(*it, "blast_raw", swhere, rep);
            a.structural.blast_percentile = get_number(*it, "blast_percentile", swhere, rep);
        }
    }

    if (auto it = obj.find("bfc_criteria"); it != obj.end()) {
        auto list = parse_criteria(*it, "bfc_criteria", where, rep);
        if (list) a.bfc_criteria = std::move(*list);
        else ok = false;
    }
    if (auto it = obj.find("dc_criteria"); it != obj.end()) {
        auto list = parse_criteria(*it, "dc_criteria", where, rep);
        if (list) a.dc_criteria = std::move(*list);
        else ok = false;
    }

    if (auto it = obj.find("metadata_tags"); it != obj.end()) {
        if (!it->is_object()) {
            rep.add(where, "'metadata_tags' must be an object of string values");
            ok = false;
        } else {
            for (const auto& [key, value] : it->items()) {
                if (!value.is_string()) {
                    rep.add(where, "metadata tag '" + key + "' must be a string");
                    ok = false;
                    continue;
                }
                a.metadata_tags.emplace(key, value.get<std::string>());
            }
        }
    }

    if (!ok) return std::nullopt;
    return a;
}

void parse_jsonl(std::istream& in, Snapshot& snap, ValidationReport& rep) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            rep.add(line_where(line_no), "invalid JSON");
            continue;
        }
        if (auto asset = parse_asset_json(obj, line_no, rep)) {
            snap.assets.push_back(std::move(*asset));
        }
    }
}

// --- CSV findings projection ---------------------------------------------------

// RFC4180-lite: quoted fields with "" escapes, no embedded newlines.
std::optional<std::vector<std::string>> split_csv_row(const std::string& line,
                                                      const std::string& where,
                                                      ValidationReport& rep) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) {
        rep.add(where, "unterminated quoted field");
        return std::nullopt;
    }
    fields.push_back(std::move(cur));
    return fields;
}

const char* kCsvHeader = "asset_id,vendor,asset_type,finding_id,control_id,original_severity,adjusted_severity";

void parse_csv(std::istream& in, Snapshot& snap, ValidationReport& rep) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) return;  // empty file -> empty snapshot
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) {
        rep.add(line_where(line_no),
                std::string("expected header '") + kCsvHeader + "', got '" + line + "'");
        return;
    }

    std::unordered_map<std::string, std::size_t> index;  // asset_id -> position
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = line_where(line_no);
        auto fields = split_csv_row(line, where, rep);
        if (!fields) continue;
        if (fields->size() != 7) {
            rep.add(where, "expected 7 fields, got " + std::to_string(fields->size()));
            continue;
        }
        const auto& f = *fields;
        auto orig = parse_severity(f[5]);
        if (!orig) {
            rep.add(where, "unknown severity '" + f[5] + "'");
            continue;
        }
        std::optional<Severity> adj;
        if (!f[6].empty()) {
            adj = parse_severity(f[6]);
            if (!adj) {
                rep.add(where, "unknown severity '" + f[6] + "'");
                continue;
            }
        }

        auto [it, inserted] = index.emplace(f[0], snap.assets.size());
        if (inserted) {
            Asset a;
            a.asset_id = f[0];
            a.vendor = f[1];
            a.asset_type = f[2];
            snap.assets.push_back(std::move(a));
        } else {
            const Asset& existing = snap.assets[it->second];
            if (existing.vendor != f[1] || existing.asset_type != f[2]) {
                rep.add(where, "asset '" + f[0] + "' re-declared with different vendor/type");
                continue;
            }
        }
        Finding finding;
        finding.finding_id = f[3];
        finding.control_id = f[4];
        finding.original_severity = *orig;
        finding.adjusted_severity = adj;
        snap.assets[it->second].findings.push_back(std::move(finding));
    }
}

// --- serialization ---------------------------------------------------------------

json asset_to_json(const Asset& a) {
    json obj = json::object();
    obj["asset_id"] = a.asset_id;
    obj["vendor"] = a.vendor;
    obj["asset_type"] = a.asset_type;
    if (!a.findings.empty()) {
        json arr = json::array();
        for (const Finding& f : a.findings) {
            json fj = json::object();
            fj["finding_id"] = f.finding_id;
            fj["control_id"] = f.control_id;
            fj["original_severity"] = std::string(to_string(f.original_severity));
            if (f.adjusted_severity) {
                fj["adjusted_severity"] = std::string(to_string(*f.adjusted_severity));
            }
            arr.push_back(std::move(fj));
        }
        obj["findings"] = std::move(arr);
    }
    if (a.attack_vectors.path_count != 0 || !a.attack_vectors.pattern_ids.empty()) {
        json av = json::object();
        av["path_count"] = a.attack_vectors.path_count;
        if (!a.attack_vectors.pattern_ids.empty()) av["pattern_ids"] = a.attack_vectors.pattern_ids;
        obj["attack_vectors"] = std::move(av);
    }
    const auto& st = a.structural;
    if (st.anomaly_raw || st.anomaly_percentile || st.blast_raw || st.blast_percentile) {
        json sj = json::object();
        if (st.anomaly_raw) sj["anomaly_raw"] = *st.anomaly_raw;
        if (st.anomaly_percentile) sj["anomaly_percentile"] = *st.anomaly_percentile;
        if (st.blast_raw) sj["blast_raw"] = *st.blast_raw;
        if (st.blast_percentile) sj["blast_percentile"] = *st.blast_percentile;
        obj["structural"] = std::move(sj);
    }
    auto criteria_to_json = [](const std::vector<CriterionAssessment>& list) {
        json arr = json::array();
        for (const CriterionAssessment& ca : list) {
            json cj = json::object();
            cj["criterion_id"] = ca.criterion_id;
            cj["label"] = ca.label;
            if (ca.score) cj["score"] = *ca.score;
            cj["confidence"] = ca.confidence;
            arr.push_back(std::move(cj));
        }
        return arr;
    };
    if (!a.bfc_criteria.empty()) obj["bfc_criteria"] = criteria_to_json(a.bfc_criteria);
    if (!a.dc_criteria.empty()) obj["dc_criteria"] = criteria_to_json(a.dc_criteria);
    if (!a.metadata_tags.empty()) obj["metadata_tags"] = a.metadata_tags;
    return obj;
}

// --- rules -----------------------------------------------------------------------

Rule parse_rule_json(const json& obj, std::size_t line) {
    auto fail = [line](const std::string& msg) -> Rule {
        throw ConfigError("rule at line " + std::to_string(line) + ": " + msg);
    };
    if (!obj.is_object()) return fail("expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
        if (key != "match" && key != "action") return fail("unknown key '" + key + "'");
    }
    if (!obj.contains("match") || !obj.contains("action")) {
        return fail("both 'match' and 'action' are required");
    }

    Rule rule;
    const json& match = obj["match"];
    if (!match.is_object()) return fail("'match' must be an object");
    for (const auto& [key, value] : match.items()) {
        if (key == "vendor" || key == "asset_type" || key == "control_id") {
            if (!value.is_string()) return fail("match." + key + " must be a string");
            if (key == "vendor") rule.match.vendor = value.get<std::string>();
            else if (key == "asset_type") rule.match.asset_type = value.get<std::string>();
            else rule.match.control_id = value.get<std::string>();
        } else if (key == "tags") {
            if (!value.is_object()) return fail("match.tags must be an object of strings");
            for (const auto& [tag, tv] : value.items()) {
                if (!tv.is_string()) return fail("match.tags." + tag + " must be a string");
                rule.match.tags.emplace(tag, tv.get<std::string>());
            }
        } else {
            return fail("unknown match key '" + key + "'");
        }
    }

    const json& action = obj["action"];
    if (!action.is_object()) return fail("'action' must be an object");
    const bool has_sev = action.contains("set_severity");
    const bool has_label = action.contains("set_label");
    if (has_sev == has_label) {
        return fail("action must have exactly one of 'set_severity' or 'set_label'");
    }
    for (const auto& [key, value] : action.items()) {
        if (key != "set_severity" && key != "set_label" && key != "confidence") {
            return fail("unknown action key '" + key + "'");
        }
    }
    if (action.contains("confidence")) {
        if (!action["confidence"].is_number()) return fail("action.confidence must be a number");
        rule.action.confidence = action["confidence"].get<double>();
        if (!(rule.action.confidence >= 0.0 && rule.action.confidence <= 1.0)) {
            return fail("action.confidence must be in [0,1]");
        }
    }
    if (has_sev) {
        rule.action.kind = RuleAction::Kind::SetSeverity;
        if (!action["set_severity"].is_string()) return fail("set_severity must be a string");
        auto sev = parse_severity(action["set_severity"].get<std::string>());
        if (!sev) {
            return fail("unknown severity '" + action["set_severity"].get<std::string>() + "'");
        }
        rule.action.severity = *sev;
    } else {
        rule.action.kind = RuleAction::Kind::SetLabel;
        const json& sl = action["set_label"];
        if (!sl.is_object() || !sl.contains("criterion_id") || !sl.contains("label") ||
            !sl["criterion_id"].is_string() || !sl["label"].is_string()) {
            return fail("set_label must be {criterion_id, label}");
        }
        rule.action.criterion_id = sl["criterion_id"].get<std::string>();
        rule.action.label = sl["label"].get<std::string>();
        const CriterionSpec* spec = find_criterion(rule.action.criterion_id);
        if (!spec) return fail("unknown criterion '" + rule.action.criterion_id + "'");
        if (rule.action.label != kNotApplicable && !label_score(*spec, rule.action.label)) {
            return fail("unknown label '" + rule.action.label + "' for criterion '" +
                        rule.action.criterion_id + "'");
        }
        if (rule.match.control_id) {
            return fail("context rules match at asset level; 'control_id' is not allowed");
        }
    }
    return rule;
}

}  // namespace

SnapshotFormat format_from_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot != std::string::npos && path.substr(dot) == ".csv") return SnapshotFormat::Csv;
    return SnapshotFormat::Jsonl;
}

SnapshotValidation parse_snapshot(std::istream& in, const std::string& snapshot_id,
                                  SnapshotFormat format) {
    Snapshot snap;
    snap.snapshot_id = snapshot_id;
    ValidationReport parse_report;
    if (format == SnapshotFormat::Jsonl) parse_jsonl(in, snap, parse_report);
    else parse_csv(in, snap, parse_report);

    // Structural validation still runs over whatever parsed, so one pass
    // reports as much as possible; acceptance stays all-or-nothing.
    SnapshotValidation structural = validate_snapshot(snap);
    SnapshotValidation out;
    out.report.issues = std::move(parse_report.issues);
    out.report.issues.insert(out.report.issues.end(), structural.report.issues.begin(),
                             structural.report.issues.end());
    if (out.report.ok()) out.snapshot = std::move(structural.snapshot);
    return out;
}

SnapshotValidation load_snapshot(const std::string& path, SnapshotFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open snapshot file: " + path);
    return parse_snapshot(in, file_stem(path), format);
}

std::string snapshot_to_jsonl(const Snapshot& snapshot) {
    std::string out;
    for (const Asset& a : snapshot.assets) {
        out += asset_to_json(a).dump();
        out += '\n';
    }
    return out;
}

void write_snapshot(const Snapshot& snapshot, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << snapshot_to_jsonl(snapshot);
    if (!out) throw IoError("write failed: " + path);
}

std::string breakdowns_to_jsonl(std::span<const ScoreBreakdown> ranked) {
    std::string out;
    std::size_t position = 0;
    for (const ScoreBreakdown& b : ranked) {
        json obj = json::object();
        obj["rank"] = ++position;
        obj["asset_id"] = b.asset_id;
        obj["b_mis"] = b.exposure.b_mis;
        obj["b_vec"] = b.exposure.b_vec;
        obj["b_base"] = b.exposure.b_base;
        obj["dominant_channel"] = std::string(to_string(b.exposure.dominant));
        if (b.context.anomaly) obj["anomaly"] = *b.context.anomaly;
        if (b.context.blast_radius) obj["blast_radius"] = *b.context.blast_radius;
        if (b.context.business_function) obj["business_function"] = *b.context.business_function;
        if (b.context.data_criticality) obj["data_criticality"] = *b.context.data_criticality;
        obj["context_components"] = b.index.components;
        if (b.index.components > 0) obj["criticality_index"] = b.index.index;
        obj["multiplier"] = b.multiplier;
        obj["final_score"] = b.final_score;
        out += obj.dump();
        out += '\n';
    }
    return out;
}

RuleSet parse_rules(std::istream& in) {
    RuleSet rules;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            throw ConfigError("rule at line " + std::to_string(line_no) + ": invalid JSON");
        }
        rules.rules.push_back(parse_rule_json(obj, line_no));
    }
    return rules;
}

RuleSet load_rules(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open rules file: " + path);
    return parse_rules(in);
}

std::string rules_to_jsonl(const RuleSet& rules) {
    std::string out;
    for (const Rule& r : rules.rules) {
        json obj = json::object();
        json match = json::object();
        if (r.match.vendor) match["vendor"] = *r.match.vendor;
        if (r.match.asset_type) match["asset_type"] = *r.match.asset_type;
        if (!r.match.tags.empty()) match["tags"] = r.match.tags;
        if (r.match.control_id) match["control_id"] = *r.match.control_id;
        obj["match"] = std::move(match);
        json action = json::object();
        if (r.action.kind == RuleAction::Kind::SetSeverity) {
            action["set_severity"] = std::string(to_string(r.action.severity));
        } else {
            action["set_label"] = {{"criterion_id", r.action.criterion_id},
                                   {"label", r.action.label}};
        }
        action["confidence"] = r.action.confidence;
        obj["action"] = std::move(action);
        out += obj.dump();
        out += '\n';
    }
    return out;
}

// --- scoring config --------------------------------------------------------------

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    const auto last = s.find_last_not_of(" \t\r");
    if (first == std::string::npos) return "";
    return s.substr(first, last - first + 1);
}

double parse_double_or_throw(const std::string& value, const std::string& key) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
    return out;
}

void require_range(double v, double lo, double hi, const std::string& key) {
    if (!(std::isfinite(v) && v >= lo && v <= hi)) {
        throw ConfigError("config key '" + key + "': value " + std::to_string(v) +
                          " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

SeverityWeightConfig parse_weights_value(const std::string& value) {
    if (const SeverityWeightConfig* preset = find_severity_preset(value)) return *preset;
    // Not a preset name: must be five comma-separated values, non-decreasing.
    std::vector<double> weights;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        weights.push_back(parse_double_or_throw(trim(item), "severity_weights"));
    }
    if (weights.size() != kSeverityCount) {
        throw ConfigError("config key 'severity_weights': expected a preset name or " +
                          std::to_string(kSeverityCount) + " comma-separated values, got '" +
                          value + "'");
    }
    SeverityWeightConfig out;
    out.name = "custom";
    for (std::size_t i = 0; i < kSeverityCount; ++i) {
        require_range(weights[i], 0.0, 1.0, "severity_weights");
        if (i > 0 && weights[i] < weights[i - 1]) {
            throw ConfigError(
                "config key 'severity_weights': weights must be non-decreasing with severity");
        }
        out.weights[i] = weights[i];
    }
    return out;
}

}  // namespace

ScoringConfig parse_scoring_config(std::istream& in) {
    return parse_scoring_config(in, default_scoring_config());
}

ScoringConfig parse_scoring_config(std::istream& in, ScoringConfig base) {
    ScoringConfig cfg = std::move(base);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "severity_weights") {
            cfg.exposure.severity_weights = parse_weights_value(value);
        } else if (key == "cap") {
            cfg.exposure.cap = parse_double_or_throw(value, key);
            require_range(cfg.exposure.cap, 0.0, 1.0, key);
        } else if (key == "floor") {
            cfg.exposure.floor = parse_double_or_throw(value, key);
            require_range(cfg.exposure.floor, 0.0, 1.0, key);
        } else if (key == "tau") {
            cfg.exposure.tau = parse_double_or_throw(value, key);
            if (!(std::isfinite(cfg.exposure.tau) && cfg.exposure.tau > 0.0)) {
                throw ConfigError("config key 'tau': must be > 0");
            }
        } else if (key == "use_adjusted_severity") {
            if (value == "true") cfg.exposure.use_adjusted_severity = true;
            else if (value == "false") cfg.exposure.use_adjusted_severity = false;
            else throw ConfigError("config key 'use_adjusted_severity': expected true|false");
        } else if (key == "alpha") {
            cfg.modulation.alpha = parse_double_or_throw(value, key);
            require_range(cfg.modulation.alpha, 0.0, 1.0, key);
        } else if (key == "confidence_threshold") {
            cfg.criterion_weights.confidence_threshold = parse_double_or_throw(value, key);
            require_range(cfg.criterion_weights.confidence_threshold, 0.0, 1.0, key);
        } else if (key.starts_with("criterion_weight.")) {
            const std::string cid = key.substr(std::string("criterion_weight.").size());
            if (!find_criterion(cid)) {
                throw ConfigError("config key '" + key + "': unknown criterion '" + cid + "'");
            }
            const double w = parse_double_or_throw(value, key);
            if (!(std::isfinite(w) && w > 0.0)) {
                throw ConfigError("config key '" + key + "': weight must be > 0");
            }
            cfg.criterion_weights.weights[cid] = w;
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
        }
    }
    return cfg;
}

ScoringConfig load_scoring_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_scoring_config(in);
}

}  // namespace assetrank
