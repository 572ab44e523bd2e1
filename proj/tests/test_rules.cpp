#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "assetrank/rules.hpp"
#include "helpers.hpp"

using namespace assetrank;
using testutil::mk_assessment;
using testutil::mk_asset;
using testutil::mk_finding;

namespace {

Rule severity_rule(RuleMatch match, Severity to) {
    Rule r;
    r.match = std::move(match);
    r.action.kind = RuleAction::Kind::SetSeverity;
    r.action.severity = to;
    return r;
}

Rule label_rule(RuleMatch match, std::string criterion, std::string_view label,
                double confidence = 1.0) {
    Rule r;
    r.match = std::move(match);
    r.action.kind = RuleAction::Kind::SetLabel;
    r.action.criterion_id = std::move(criterion);
    r.action.label = std::string(label);
    r.action.confidence = confidence;
    return r;
}

Snapshot small_snapshot() {
    Snapshot s;
    s.snapshot_id = "t";
    Asset prod = mk_asset("prod-db", {Severity::High});
    prod.vendor = "AWS";
    prod.asset_type = "sql_database";
    prod.metadata_tags["env"] = "prod";
    prod.findings[0].control_id = "ctl-encryption";
    Asset dev = mk_asset("dev-db", {Severity::High});
    dev.vendor = "AWS";
    dev.asset_type = "sql_database";
    dev.metadata_tags["env"] = "dev";
    dev.findings[0].control_id = "ctl-encryption";
    s.assets = {prod, dev};
    return s;
}

}  // namespace

TEST_CASE("match conditions are conjunctive; empty matches everything") {
    Asset a = mk_asset("a", {Severity::Low});
    a.vendor = "AWS";
    a.asset_type = "object_bucket";
    a.metadata_tags = {{"env", "prod"}, {"team", "core"}};
    a.findings[0].control_id = "ctl-1";

    CHECK(RuleMatch{}.matches(a, a.findings[0]));
    CHECK(RuleMatch{}.matches_asset(a));

    RuleMatch m;
    m.vendor = "AWS";
    m.asset_type = "object_bucket";
    m.tags = {{"env", "prod"}};
    m.control_id = "ctl-1";
    CHECK(m.matches(a, a.findings[0]));

    RuleMatch wrong_vendor = m;
    wrong_vendor.vendor = "GCP";
    CHECK(!wrong_vendor.matches(a, a.findings[0]));

    RuleMatch wrong_tag = m;
    wrong_tag.tags = {{"env", "dev"}};
    CHECK(!wrong_tag.matches(a, a.findings[0]));

    RuleMatch missing_tag = m;
    missing_tag.tags = {{"env", "prod"}, {"owner", "alice"}};
    CHECK(!missing_tag.matches(a, a.findings[0]));

    RuleMatch wrong_control = m;
    wrong_control.control_id = "ctl-2";
    CHECK(!wrong_control.matches(a, a.findings[0]));
    // Asset-level matching ignores the control id entirely.
    CHECK(wrong_control.matches_asset(a));
}

TEST_CASE("severity rules: first match wins") {
    RuleMatch prod_tag;
    prod_tag.tags = {{"env", "prod"}};
    RuleSet rules;
    rules.rules.push_back(severity_rule(prod_tag, Severity::Critical));
    rules.rules.push_back(severity_rule(RuleMatch{}, Severity::Info));  // catch-all

    Snapshot out = apply_severity_rules(small_snapshot(), rules);
    REQUIRE(out.assets.size() == 2);
    CHECK(out.assets[0].findings[0].adjusted_severity == Severity::Critical);
    CHECK(out.assets[1].findings[0].adjusted_severity == Severity::Info);
    // Originals survive untouched.
    CHECK(out.assets[0].findings[0].original_severity == Severity::High);
    CHECK(out.assets[1].findings[0].original_severity == Severity::High);
}

TEST_CASE("severity rules: unmatched findings stay unadjusted") {
    RuleMatch narrow;
    narrow.control_id = "ctl-nothing-has-this";
    RuleSet rules;
    rules.rules.push_back(severity_rule(narrow, Severity::Info));

    Snapshot out = apply_severity_rules(small_snapshot(), rules);
    CHECK(!out.assets[0].findings[0].adjusted_severity.has_value());
    CHECK(!out.assets[1].findings[0].adjusted_severity.has_value());
}

TEST_CASE("severity rules are idempotent and re-derivable") {
    RuleMatch m;
    m.tags = {{"env", "prod"}};
    RuleSet rules;
    rules.rules.push_back(severity_rule(m, Severity::Low));

    Snapshot once = apply_severity_rules(small_snapshot(), rules);
    Snapshot twice = apply_severity_rules(once, rules);
    CHECK(once == twice);

    // Wiping the adjustments and re-running recovers the same snapshot.
    Snapshot wiped = once;
    for (auto& a : wiped.assets) {
        for (auto& f : a.findings) f.adjusted_severity.reset();
    }
    CHECK(apply_severity_rules(wiped, rules) == once);
}

TEST_CASE("a later rule can no longer touch a finding claimed by an earlier one") {
    RuleSet rules;
    rules.rules.push_back(severity_rule(RuleMatch{}, Severity::Medium));
    RuleMatch prod;
    prod.tags = {{"env", "prod"}};
    rules.rules.push_back(severity_rule(prod, Severity::Critical));

    Snapshot out = apply_severity_rules(small_snapshot(), rules);
    CHECK(out.assets[0].findings[0].adjusted_severity == Severity::Medium);
}

TEST_CASE("context rules fill gaps without overwriting supplied assessments") {
    Snapshot s = small_snapshot();
    s.assets[0].dc_criteria = {mk_assessment("data_type", "low")};

    RuleSet rules;
    RuleMatch db;
    db.asset_type = "sql_database";
    rules.rules.push_back(label_rule(db, "data_type", "regulated_sensitive"));
    rules.rules.push_back(label_rule(db, "environment", "production", 0.8));

    Snapshot out = classify_context(s, rules);
    // Asset 0 already had data_type: the supplied label survives.
    REQUIRE(out.assets[0].dc_criteria.size() == 1);
    CHECK(out.assets[0].dc_criteria[0].label == "low");
    // The missing environment criterion is filled with score + confidence.
    REQUIRE(out.assets[0].bfc_criteria.size() == 1);
    CHECK(out.assets[0].bfc_criteria[0].criterion_id == "environment");
    CHECK(out.assets[0].bfc_criteria[0].label == "production");
    CHECK(out.assets[0].bfc_criteria[0].score == 1.0);
    CHECK(out.assets[0].bfc_criteria[0].confidence == 0.8);
    // Asset 1 had nothing: both criteria arrive.
    REQUIRE(out.assets[1].dc_criteria.size() == 1);
    CHECK(out.assets[1].dc_criteria[0].label == "regulated_sensitive");
    CHECK(out.assets[1].dc_criteria[0].score == 1.0);
}

TEST_CASE("context rules: first match per criterion wins, NA labels are allowed") {
    RuleSet rules;
    RuleMatch prod;
    prod.tags = {{"env", "prod"}};
    rules.rules.push_back(label_rule(prod, "data_type", "regulated_sensitive"));
    rules.rules.push_back(label_rule(RuleMatch{}, "data_type", "unknown"));
    rules.rules.push_back(label_rule(RuleMatch{}, "system_role", kNotApplicable));

    Snapshot out = classify_context(small_snapshot(), rules);
    CHECK(out.assets[0].dc_criteria.size() == 2);
    CHECK(out.assets[0].dc_criteria[0].label == "regulated_sensitive");
    CHECK(out.assets[1].dc_criteria[0].label == "unknown");
    CHECK(out.assets[1].dc_criteria[0].score == 0.0);
    // The NA assessment is emitted as such: no score attached.
    const auto& na = out.assets[0].dc_criteria[1];
    CHECK(na.criterion_id == "system_role");
    CHECK(na.not_applicable());
    CHECK(!na.score.has_value());
}

TEST_CASE("classify_context is idempotent") {
    RuleSet rules;
    rules.rules.push_back(label_rule(RuleMatch{}, "environment", "production"));
    Snapshot once = classify_context(small_snapshot(), rules);
    CHECK(classify_context(once, rules) == once);
}

TEST_CASE("rule engine implements both interfaces consistently") {
    RuleSet rules;
    RuleMatch m;
    m.vendor = "AWS";
    rules.rules.push_back(severity_rule(m, Severity::Low));
    rules.rules.push_back(label_rule(m, "environment", "production"));
    RuleEngine engine(rules);

    Snapshot s = small_snapshot();
    CHECK(engine.adjust(s.assets[0], s.assets[0].findings[0]) == Severity::Low);
    auto assessments = engine.classify(s.assets[0]);
    REQUIRE(assessments.size() == 1);
    CHECK(assessments[0].criterion_id == "environment");

    Asset other = mk_asset("x", {Severity::High});
    other.vendor = "GCP";
    CHECK(!engine.adjust(other, other.findings[0]).has_value());
    CHECK(engine.classify(other).empty());
}

TEST_CASE("adjustment impact reproduces the worked downgrade example") {
    // One HIGH finding re-rated to LOW under baseline weights, cap 0.75:
    // before 0.75*0.35 = 0.2625, after 0.75*0.02 = 0.015.
    Snapshot s;
    s.snapshot_id = "t";
    Asset a = mk_asset("a");
    a.findings.push_back(mk_finding("f1", Severity::High, Severity::Low));
    s.assets.push_back(a);

    auto impact = adjustment_impact(s, default_scoring_config());
    REQUIRE(impact.size() == 1);
    CHECK(impact[0].asset_id == "a");
    CHECK(std::abs(impact[0].score_original - 0.2625) < 1e-12);
    CHECK(std::abs(impact[0].score_adjusted - 0.015) < 1e-12);
}

TEST_CASE("adjustment impact only covers assets with adjusted findings") {
    Snapshot s;
    s.snapshot_id = "t";
    s.assets.push_back(mk_asset("plain", {Severity::High}));  // no adjustments
    Asset mixed = mk_asset("mixed", {Severity::Critical});
    mixed.findings.push_back(mk_finding("f2", Severity::High, Severity::Info));
    s.assets.push_back(mixed);
    s.assets.push_back(mk_asset("paths-only", {}, 3));  // no findings at all

    auto impact = adjustment_impact(s, default_scoring_config());
    REQUIRE(impact.size() == 1);
    CHECK(impact[0].asset_id == "mixed");
    // Unadjusted findings keep their original severity in the adjusted score.
    ScoringConfig cfg = default_scoring_config();
    const double w_crit = cfg.exposure.severity_weights.weight(Severity::Critical);
    const double w_info = cfg.exposure.severity_weights.weight(Severity::Info);
    const double expected = cfg.exposure.cap * (1.0 - (1.0 - w_crit) * (1.0 - w_info));
    CHECK(std::abs(impact[0].score_adjusted - expected) < 1e-12);
}

TEST_CASE("upgrades raise the adjusted score") {
    Snapshot s;
    s.snapshot_id = "t";
    Asset a = mk_asset("a");
    a.findings.push_back(mk_finding("f1", Severity::Low, Severity::Critical));
    s.assets.push_back(a);
    auto impact = adjustment_impact(s, default_scoring_config());
    REQUIRE(impact.size() == 1);
    CHECK(impact[0].score_adjusted > impact[0].score_original);
}
