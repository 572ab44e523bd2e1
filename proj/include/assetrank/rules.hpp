#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "assetrank/asset.hpp"
#include "assetrank/scoring.hpp"

namespace assetrank {

// Pluggable severity re-rater. Returning nullopt leaves the finding alone.
class SeverityAdjuster {
public:
    virtual ~SeverityAdjuster() = default;
    virtual std::optional<Severity> adjust(const Asset& asset, const Finding& finding) const = 0;
};

// Pluggable context labeler. Returns assessments for criteria the asset does
// not already carry; supplied assessments always take precedence.
class ContextClassifier {
public:
    virtual ~ContextClassifier() = default;
    virtual std::vector<CriterionAssessment> classify(const Asset& asset) const = 0;
};

// Conjunctive match condition. Every populated field must hold; an empty
// condition matches everything. `control_id` only participates in severity
// rules (context rules match at the asset level).
struct RuleMatch {
    std::optional<std::string> vendor;
    std::optional<std::string> asset_type;
    std::map<std::string, std::string> tags;  // all listed pairs must be present and equal
    std::optional<std::string> control_id;

    bool matches_asset(const Asset& a) const;
    bool matches(const Asset& a, const Finding& f) const;
    bool operator==(const RuleMatch&) const = default;
};

struct RuleAction {
    enum class Kind { SetSeverity, SetLabel };
    Kind kind = Kind::SetSeverity;
    Severity severity = Severity::Info;  // SetSeverity
    std::string criterion_id;            // SetLabel
    std::string label;                   // SetLabel; may be not_applicable
    double confidence = 1.0;

    bool operator==(const RuleAction&) const = default;
};

struct Rule {
    RuleMatch match;
    RuleAction action;

    bool operator==(const Rule&) const = default;
};

// Ordered rule list; first match wins per finding (severity) and per
// criterion (context).
struct RuleSet {
    std::vector<Rule> rules;

    bool operator==(const RuleSet&) const = default;
};

// Deterministic rule-driven implementation of both interfaces.
class RuleEngine final : public SeverityAdjuster, public ContextClassifier {
public:
    explicit RuleEngine(RuleSet rules) : rules_(std::move(rules)) {}

    std::optional<Severity> adjust(const Asset& asset, const Finding& finding) const override;
    std::vector<CriterionAssessment> classify(const Asset& asset) const override;

    const RuleSet& rules() const { return rules_; }

private:
    RuleSet rules_;
};

// Applies the adjuster to every finding of every asset; matched findings get
// adjusted_severity set, unmatched findings are left untouched. Originals are
// never modified. Idempotent for a fixed adjuster.
Snapshot apply_severity_rules(Snapshot snapshot, const SeverityAdjuster& adjuster);

// Fills in criterion assessments the assets are missing; never overwrites a
// supplied assessment. Scores are attached from the catalog maps.
Snapshot classify_context(Snapshot snapshot, const ContextClassifier& classifier);

// Convenience overloads running a RuleEngine over the rule set.
Snapshot apply_severity_rules(Snapshot snapshot, const RuleSet& rules);
Snapshot classify_context(Snapshot snapshot, const RuleSet& rules);

// Before/after comparison of the misconfiguration channel for every asset
// that has at least one finding and at least one adjusted severity:
// score_original uses original severities, score_adjusted the adjusted ones.
struct AdjustmentImpact {
    std::string asset_id;
    double score_original = 0.0;
    double score_adjusted = 0.0;

    bool operator==(const AdjustmentImpact&) const = default;
};

std::vector<AdjustmentImpact> adjustment_impact(const Snapshot& snapshot,
                                                const ScoringConfig& cfg);

}  // namespace assetrank
