#include "assetrank/rules.hpp"

#include <algorithm>
#include <set>

namespace assetrank {

bool RuleMatch::matches_asset(const Asset& a) const {
    if (vendor && *vendor != a.vendor) return false;
    if (asset_type && *asset_type != a.asset_type) return false;
    for (const auto& [key, value] : tags) {
        auto it = a.metadata_tags.find(key);
        if (it == a.metadata_tags.end() || it->second != value) return false;
    }
    return true;
}

bool RuleMatch::matches(const Asset& a, const Finding& f) const {
    if (!matches_asset(a)) return false;
    if (control_id && *control_id != f.control_id) return false;
    return true;
}

std::optional<Severity> RuleEngine::adjust(const Asset& asset, const Finding& finding) const {
    for (const Rule& rule : rules_.rules) {
        if (rule.action.kind != RuleAction::Kind::SetSeverity) continue;
        if (rule.match.matches(asset, finding)) return rule.action.severity;
    }
    return std::nullopt;
}

std::vector<CriterionAssessment> RuleEngine::classify(const Asset& asset) const {
    std::vector<CriterionAssessment> out;
    std::set<std::string> emitted;
    for (const Rule& rule : rules_.rules) {
        if (rule.action.kind != RuleAction::Kind::SetLabel) continue;
        if (emitted.contains(rule.action.criterion_id)) continue;  // first match wins
        if (!rule.match.matches_asset(asset)) continue;
        CriterionAssessment ca;
        ca.criterion_id = rule.action.criterion_id;
        ca.label = rule.action.label;
        if (ca.label != kNotApplicable) {
            const CriterionSpec* spec = find_criterion(ca.criterion_id);
            ca.score = spec ? label_score(*spec, ca.label) : std::nullopt;
        }
        ca.confidence = rule.action.confidence;
        emitted.insert(ca.criterion_id);
        out.push_back(std::move(ca));
    }
    return out;
}

Snapshot apply_severity_rules(Snapshot snapshot, const SeverityAdjuster& adjuster) {
    for (Asset& a : snapshot.assets) {
        for (Finding& f : a.findings) {
            if (auto adjusted = adjuster.adjust(a, f)) f.adjusted_severity = adjusted;
        }
    }
    return snapshot;
}

Snapshot classify_context(Snapshot snapshot, const ContextClassifier& classifier) {
    for (Asset& a : snapshot.assets) {
        std::set<std::string> present;
        for (const auto& ca : a.bfc_criteria) present.insert(ca.criterion_id);
        for (const auto& ca : a.dc_criteria) present.insert(ca.criterion_id);
        for (CriterionAssessment& ca : classifier.classify(a)) {
            if (present.contains(ca.criterion_id)) continue;  // supplied wins
            const CriterionSpec* spec = find_criterion(ca.criterion_id);
            if (!spec) continue;
            present.insert(ca.criterion_id);
            auto& list = spec->family == CriterionFamily::BusinessFunction ? a.bfc_criteria
                                                                           : a.dc_criteria;
            list.push_back(std::move(ca));
        }
    }
    return snapshot;
}

Snapshot apply_severity_rules(Snapshot snapshot, const RuleSet& rules) {
    return apply_severity_rules(std::move(snapshot), RuleEngine(rules));
}

Snapshot classify_context(Snapshot snapshot, const RuleSet& rules) {
    return classify_context(std::move(snapshot), RuleEngine(rules));
}

std::vector<AdjustmentImpact> adjustment_impact(const Snapshot& snapshot,
                                                const ScoringConfig& cfg) {
    std::vector<AdjustmentImpact> out;
    ExposureConfig original_cfg = cfg.exposure;
    original_cfg.use_adjusted_severity = false;
    ExposureConfig adjusted_cfg = cfg.exposure;
    adjusted_cfg.use_adjusted_severity = true;

    for (const Asset& a : snapshot.assets) {
        if (a.findings.empty()) continue;
        const bool any_adjusted = std::any_of(a.findings.begin(), a.findings.end(),
                                              [](const Finding& f) {
                                                  return f.adjusted_severity.has_value();
                                              });
        if (!any_adjusted) continue;
        AdjustmentImpact impact;
        impact.asset_id = a.asset_id;
        impact.score_original = misconfiguration_exposure(a.findings, original_cfg);
        impact.score_adjusted = misconfiguration_exposure(a.findings, adjusted_cfg);
        out.push_back(std::move(impact));
    }
    return out;
}

}  // namespace assetrank
