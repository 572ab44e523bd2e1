#include "assetrank/validation.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace assetrank {
namespace {

std::string asset_where(const Asset& a, std::size_t idx) {
    std::ostringstream os;
    os << "asset[" << idx << "]";
    if (!a.asset_id.empty()) os << " '" << a.asset_id << "'";
    return os.str();
}

bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void check_percentile(ValidationReport& rep, const std::string& where, const char* name,
                      const std::optional<double>& v) {
    if (v && !in_unit_interval(*v)) {
        rep.add(where, std::string(name) + " must be in [0,1], got " + std::to_string(*v));
    }
}

void check_raw(ValidationReport& rep, const std::string& where, const char* name,
               const std::optional<double>& v) {
    if (v && (!std::isfinite(*v) || *v < 0.0)) {
        rep.add(where, std::string(name) + " must be finite and >= 0, got " + std::to_string(*v));
    }
}

// Validates one criterion list and canonicalizes scores in place.
void check_criteria(ValidationReport& rep, const std::string& where, const char* list_name,
                    CriterionFamily family, std::vector<CriterionAssessment>& list) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < list.size(); ++i) {
        CriterionAssessment& ca = list[i];
        std::string cwhere = where + "." + list_name + "[" + std::to_string(i) + "]";
        const CriterionSpec* spec = find_criterion(ca.criterion_id);
        if (!spec) {
            rep.add(cwhere, "unknown criterion '" + ca.criterion_id + "'");
            continue;
        }
        if (spec->family != family) {
            rep.add(cwhere, "criterion '" + ca.criterion_id + "' belongs to " +
                                std::string(to_string(spec->family)) + ", not " +
                                std::string(to_string(family)));
            continue;
        }
        if (!seen.insert(ca.criterion_id).second) {
            rep.add(cwhere, "duplicate assessment for criterion '" + ca.criterion_id + "'");
            continue;
        }
        if (!in_unit_interval(ca.confidence)) {
            rep.add(cwhere, "confidence must be in [0,1], got " + std::to_string(ca.confidence));
        }
        if (ca.label == kNotApplicable) {
            if (ca.score) {
                rep.add(cwhere, "not_applicable assessments carry no score");
            }
            continue;
        }
        std::optional<double> expected = label_score(*spec, ca.label);
        if (!expected) {
            rep.add(cwhere, "unknown label '" + ca.label + "' for criterion '" +
                                ca.criterion_id + "'");
            continue;
        }
        if (ca.score && *ca.score != *expected) {
            rep.add(cwhere, "score " + std::to_string(*ca.score) + " does not match label '" +
                                ca.label + "' (" + std::to_string(*expected) + ")");
            continue;
        }
        ca.score = expected;
    }
}

}  // namespace

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& issue : issues) {
        os << issue.where << ": " << issue.message << "\n";
    }
    return os.str();
}

SnapshotValidation validate_snapshot(const Snapshot& raw) {
    SnapshotValidation out;
    Snapshot canon = raw;

    std::unordered_set<std::string> asset_ids;
    for (std::size_t i = 0; i < canon.assets.size(); ++i) {
        Asset& a = canon.assets[i];
        std::string where = asset_where(a, i);

        if (a.asset_id.empty()) out.report.add(where, "asset_id must be non-empty");
        else if (!asset_ids.insert(a.asset_id).second) {
            out.report.add(where, "duplicate asset_id '" + a.asset_id + "'");
        }
        if (a.vendor.empty()) out.report.add(where, "vendor must be non-empty");
        if (a.asset_type.empty()) out.report.add(where, "asset_type must be non-empty");

        std::unordered_set<std::string> finding_ids;
        for (std::size_t j = 0; j < a.findings.size(); ++j) {
            const Finding& f = a.findings[j];
            std::string fwhere = where + ".findings[" + std::to_string(j) + "]";
            if (f.finding_id.empty()) out.report.add(fwhere, "finding_id must be non-empty");
            else if (!finding_ids.insert(f.finding_id).second) {
                out.report.add(fwhere, "duplicate finding_id '" + f.finding_id + "'");
            }
            if (f.control_id.empty()) out.report.add(fwhere, "control_id must be non-empty");
        }

        const auto& av = a.attack_vectors;
        if (av.path_count < 0) {
            out.report.add(where + ".attack_vectors",
                           "path_count must be >= 0, got " + std::to_string(av.path_count));
        } else if (!av.pattern_ids.empty() &&
                   av.path_count != static_cast<std::int64_t>(av.pattern_ids.size())) {
            out.report.add(where + ".attack_vectors",
                           "pattern_ids lists " + std::to_string(av.pattern_ids.size()) +
                               " ids but path_count is " + std::to_string(av.path_count));
        }

        check_raw(out.report, where + ".structural", "anomaly_raw", a.structural.anomaly_raw);
        check_raw(out.report, where + ".structural", "blast_raw", a.structural.blast_raw);
        check_percentile(out.report, where + ".structural", "anomaly_percentile",
                         a.structural.anomaly_percentile);
        check_percentile(out.report, where + ".structural", "blast_percentile",
                         a.structural.blast_percentile);

        check_criteria(out.report, where, "bfc_criteria", CriterionFamily::BusinessFunction,
                       a.bfc_criteria);
        check_criteria(out.report, where, "dc_criteria", CriterionFamily::DataCriticality,
                       a.dc_criteria);
    }

    if (out.report.ok()) out.snapshot = std::move(canon);
    return out;
}

ValidationReport validate_snapshot_report(const Snapshot& raw) {
    return validate_snapshot(raw).report;
}

}  // namespace assetrank
