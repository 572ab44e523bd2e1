#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "assetrank/errors.hpp"
#include "assetrank/io.hpp"
#include "helpers.hpp"

using namespace assetrank;
using testutil::mk_assessment;
using testutil::mk_asset;
using testutil::mk_finding;

namespace {

SnapshotValidation parse_jsonl_text(const std::string& text) {
    std::istringstream in(text);
    return parse_snapshot(in, "t", SnapshotFormat::Jsonl);
}

SnapshotValidation parse_csv_text(const std::string& text) {
    std::istringstream in(text);
    return parse_snapshot(in, "t", SnapshotFormat::Csv);
}

bool mentions(const ValidationReport& rep, const std::string& needle) {
    for (const auto& issue : rep.issues) {
        if (issue.where.find(needle) != std::string::npos ||
            issue.message.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("assetrank-io-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("format guessing by extension") {
    CHECK(format_from_path("snap.csv") == SnapshotFormat::Csv);
    CHECK(format_from_path("snap.jsonl") == SnapshotFormat::Jsonl);
    CHECK(format_from_path("snap") == SnapshotFormat::Jsonl);
    CHECK(format_from_path("dir.csv/snap.jsonl") == SnapshotFormat::Jsonl);
}

TEST_CASE("minimal asset parses") {
    auto res = parse_jsonl_text(
        R"({"asset_id":"a1","vendor":"AWS","asset_type":"object_bucket"})" "\n");
    REQUIRE(res.ok());
    REQUIRE(res.snapshot->assets.size() == 1);
    const Asset& a = res.snapshot->assets[0];
    CHECK(a.asset_id == "a1");
    CHECK(a.vendor == "AWS");
    CHECK(a.asset_type == "object_bucket");
    CHECK(a.findings.empty());
    CHECK(a.attack_vectors.path_count == 0);
    CHECK(res.snapshot->snapshot_id == "t");
}

TEST_CASE("full asset parses with every section") {
    auto res = parse_jsonl_text(R"({"asset_id":"a1","vendor":"AWS","asset_type":"sql_database",)"
                                R"("findings":[{"finding_id":"f1","control_id":"c1",)"
                                R"("original_severity":"HIGH","adjusted_severity":"LOW"}],)"
                                R"("attack_vectors":{"path_count":2,"pattern_ids":["p1","p2"]},)"
                                R"("structural":{"anomaly_raw":3.5,"blast_percentile":0.25},)"
                                R"("bfc_criteria":[{"criterion_id":"environment","label":"production"}],)"
                                R"("dc_criteria":[{"criterion_id":"data_type","label":"internal",)"
                                R"("confidence":0.7}],)"
                                R"("metadata_tags":{"env":"prod"}})" "\n");
    REQUIRE(res.ok());
    const Asset& a = res.snapshot->assets[0];
    REQUIRE(a.findings.size() == 1);
    CHECK(a.findings[0].original_severity == Severity::High);
    CHECK(a.findings[0].adjusted_severity == Severity::Low);
    CHECK(a.attack_vectors.path_count == 2);
    CHECK(a.attack_vectors.pattern_ids == std::vector<std::string>{"p1", "p2"});
    CHECK(a.structural.anomaly_raw == 3.5);
    CHECK(!a.structural.anomaly_percentile.has_value());
    CHECK(a.structural.blast_percentile == 0.25);
    REQUIRE(a.bfc_criteria.size() == 1);
    CHECK(a.bfc_criteria[0].score == 1.0);  // attached from the label map
    REQUIRE(a.dc_criteria.size() == 1);
    CHECK(a.dc_criteria[0].confidence == 0.7);
    CHECK(a.metadata_tags.at("env") == "prod");
}

TEST_CASE("parse issues carry 1-based line numbers") {
    auto res = parse_jsonl_text(
        R"({"asset_id":"a1","vendor":"AWS","asset_type":"x"})" "\n"
        "not json at all\n"
        R"({"asset_id":"a2","vendor":"AWS"})" "\n");
    CHECK(!res.ok());
    CHECK(!res.snapshot.has_value());
    CHECK(mentions(res.report, "line 2"));
    CHECK(mentions(res.report, "line 3"));
    CHECK(mentions(res.report, "asset_type"));
}

TEST_CASE("unknown keys are rejected everywhere") {
    CHECK(mentions(parse_jsonl_text(
        R"({"asset_id":"a","vendor":"V","asset_type":"t","surprise":1})" "\n").report,
        "unknown key 'surprise'"));
    CHECK(mentions(parse_jsonl_text(
        R"({"asset_id":"a","vendor":"V","asset_type":"t",)"
        R"("findings":[{"finding_id":"f","control_id":"c","original_severity":"LOW","x":1}]})" "\n")
        .report, "unknown key 'x'"));
    CHECK(mentions(parse_jsonl_text(
        R"({"asset_id":"a","vendor":"V","asset_type":"t","attack_vectors":{"paths":1}})" "\n")
        .report, "unknown key 'paths'"));
}

TEST_CASE("type errors are reported precisely") {
    CHECK(mentions(parse_jsonl_text(
        R"({"asset_id":7,"vendor":"V","asset_type":"t"})" "\n").report,
        "'asset_id' must be a string"));
    CHECK(mentions(parse_jsonl_text(
        R"({"asset_id":"a","vendor":"V","asset_type":"t",)"
        R"("attack_vectors":{"path_count":1.5}})" "\n").report,
        "'path_count' must be an integer"));
    CHECK(mentions(parse_jsonl_text(
        R"({"asset_id":"a","vendor":"V","asset_type":"t",)"
        R"("findings":[{"finding_id":"f","control_id":"c","original_severity":"SEVERE"}]})" "\n")
        .report, "unknown severity 'SEVERE'"));
}

TEST_CASE("empty input yields an empty, valid snapshot") {
    auto res = parse_jsonl_text("");
    REQUIRE(res.ok());
    CHECK(res.snapshot->assets.empty());

    // Blank lines are skipped, not errors.
    res = parse_jsonl_text("\n\n");
    REQUIRE(res.ok());
    CHECK(res.snapshot->assets.empty());
}

TEST_CASE("parse and structural problems are reported together") {
    // Line 1 is fine, line 2 has bad JSON, line 3 duplicates asset a1.
    auto res = parse_jsonl_text(
        R"({"asset_id":"a1","vendor":"V","asset_type":"t"})" "\n"
        "{oops\n"
        R"({"asset_id":"a1","vendor":"V","asset_type":"t"})" "\n");
    CHECK(res.report.issues.size() == 2);
    CHECK(mentions(res.report, "invalid JSON"));
    CHECK(mentions(res.report, "a1"));
}

TEST_CASE("jsonl round trip is exact, including doubles") {
    Snapshot s;
    s.snapshot_id = "rt";
    Asset a = mk_asset("a1", {Severity::High, Severity::Critical}, 2);
    a.attack_vectors.pattern_ids = {"p1", "p2"};
    a.findings[0].adjusted_severity = Severity::Info;
    a.structural.anomaly_raw = 0.1;  // not exactly representable
    a.structural.blast_percentile = 1.0 / 3.0;
    a.bfc_criteria = {mk_assessment("environment", "production", 0.9)};
    a.dc_criteria = {mk_assessment("data_type", kNotApplicable),
                     mk_assessment("access_exposure", "broad", 0.6)};
    a.metadata_tags = {{"env", "prod"}, {"team", "a,b \"quoted\""}};
    Asset b = mk_asset("b-bare");
    s.assets = {a, b};

    const std::string text = snapshot_to_jsonl(s);
    auto res = parse_jsonl_text(text);
    REQUIRE(res.ok());
    res.snapshot->snapshot_id = s.snapshot_id;  // identity comes from the path, not the bytes
    CHECK(*res.snapshot == s);

    // Serialization itself is byte-deterministic.
    CHECK(snapshot_to_jsonl(*res.snapshot) == text);
}

TEST_CASE("file round trip via write_snapshot/load_snapshot") {
    TempDir tmp;
    Snapshot s;
    s.snapshot_id = "snap";
    s.assets = {mk_asset("a1", {Severity::Medium}), mk_asset("a2", {}, 1)};
    const std::string path = tmp.file("snap.jsonl");
    write_snapshot(s, path);
    auto res = load_snapshot(path);
    REQUIRE(res.ok());
    CHECK(*res.snapshot == s);  // stem == snapshot_id, created_at empty
}

TEST_CASE("load_snapshot throws IoError on missing files") {
    CHECK_THROWS_AS(load_snapshot("/nonexistent/dir/snap.jsonl"), IoError);
    CHECK_THROWS_AS(load_rules("/nonexistent/rules.jsonl"), IoError);
    CHECK_THROWS_AS(load_scoring_config("/nonexistent/cfg.conf"), IoError);
    TempDir tmp;
    Snapshot s;
    CHECK_THROWS_AS(write_snapshot(s, tmp.file("no/such/dir/out.jsonl")), IoError);
}

TEST_CASE("csv projection groups rows into assets") {
    auto res = parse_csv_text(
        "asset_id,vendor,asset_type,finding_id,control_id,original_severity,adjusted_severity\n"
        "a1,AWS,object_bucket,f1,c1,HIGH,\n"
        "a1,AWS,object_bucket,f2,c2,LOW,INFO\n"
        "a2,GCP,sql_database,f3,c1,CRITICAL,\n");
    REQUIRE(res.ok());
    REQUIRE(res.snapshot->assets.size() == 2);
    const Asset& a1 = res.snapshot->assets[0];
    CHECK(a1.findings.size() == 2);
    CHECK(!a1.findings[0].adjusted_severity.has_value());
    CHECK(a1.findings[1].adjusted_severity == Severity::Info);
    CHECK(res.snapshot->assets[1].vendor == "GCP");
}

TEST_CASE("csv quoting handles commas and escaped quotes") {
    auto res = parse_csv_text(
        "asset_id,vendor,asset_type,finding_id,control_id,original_severity,adjusted_severity\n"
        "\"a,1\",\"Vendor \"\"X\"\"\",bucket,f1,c1,LOW,\n");
    REQUIRE(res.ok());
    CHECK(res.snapshot->assets[0].asset_id == "a,1");
    CHECK(res.snapshot->assets[0].vendor == "Vendor \"X\"");
}

TEST_CASE("csv rejects bad headers, field counts, and inconsistent re-declarations") {
    CHECK(mentions(parse_csv_text("id,vendor\n").report, "expected header"));
    CHECK(mentions(parse_csv_text(
        "asset_id,vendor,asset_type,finding_id,control_id,original_severity,adjusted_severity\n"
        "a1,AWS,bucket,f1,c1\n").report, "expected 7 fields"));
    CHECK(mentions(parse_csv_text(
        "asset_id,vendor,asset_type,finding_id,control_id,original_severity,adjusted_severity\n"
        "a1,AWS,bucket,f1,c1,LOW,\n"
        "a1,GCP,bucket,f2,c2,LOW,\n").report, "re-declared"));
    CHECK(mentions(parse_csv_text(
        "asset_id,vendor,asset_type,finding_id,control_id,original_severity,adjusted_severity\n"
        "a1,AWS,bucket,f1,c1,BAD,\n").report, "unknown severity 'BAD'"));
    // Errors carry the data row's line number (header is line 1).
    CHECK(mentions(parse_csv_text(
        "asset_id,vendor,asset_type,finding_id,control_id,original_severity,adjusted_severity\n"
        "a1,AWS,bucket,f1,c1,LOW,\n"
        "a2,AWS,bucket,f2,c2,NOPE,\n").report, "line 3"));
}

TEST_CASE("rules round trip and first-class parse errors") {
    std::istringstream in(
        R"({"match":{"vendor":"AWS","tags":{"env":"prod"}},"action":{"set_severity":"LOW"}})" "\n"
        R"({"match":{},"action":{"set_label":{"criterion_id":"data_type","label":"internal"},)"
        R"("confidence":0.8}})" "\n");
    RuleSet rules = parse_rules(in);
    REQUIRE(rules.rules.size() == 2);
    CHECK(rules.rules[0].match.vendor == "AWS");
    CHECK(rules.rules[0].action.kind == RuleAction::Kind::SetSeverity);
    CHECK(rules.rules[0].action.severity == Severity::Low);
    CHECK(rules.rules[1].action.kind == RuleAction::Kind::SetLabel);
    CHECK(rules.rules[1].action.confidence == 0.8);

    const std::string text = rules_to_jsonl(rules);
    std::istringstream again(text);
    CHECK(parse_rules(again) == rules);
}

TEST_CASE("rule parse failures mention the line and the problem") {
    auto expect_throw = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            parse_rules(in);
            FAIL("expected ConfigError for: " << text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_throw("{bad\n", "line 1");
    expect_throw(R"({"match":{}})" "\n", "required");
    expect_throw(R"({"match":{},"action":{"set_severity":"LOW","set_label":{}}})" "\n",
                 "exactly one");
    expect_throw(R"({"match":{},"action":{"set_severity":"NOPE"}})" "\n", "unknown severity");
    expect_throw(R"({"match":{"weird":1},"action":{"set_severity":"LOW"}})" "\n",
                 "unknown match key");
    expect_throw(
        R"({"match":{},"action":{"set_label":{"criterion_id":"nope","label":"x"}}})" "\n",
        "unknown criterion");
    expect_throw(
        R"({"match":{},"action":{"set_label":{"criterion_id":"data_type","label":"huge"}}})" "\n",
        "unknown label");
    expect_throw(R"({"match":{},"action":{"set_severity":"LOW","confidence":1.5}})" "\n",
                 "[0,1]");
    // Context rules cannot scope to a control.
    expect_throw(R"({"match":{"control_id":"c1"},)"
                 R"("action":{"set_label":{"criterion_id":"data_type","label":"internal"}}})" "\n",
                 "control_id");
    // Severity rules can.
    std::istringstream ok(
        R"({"match":{"control_id":"c1"},"action":{"set_severity":"LOW"}})" "\n");
    CHECK(parse_rules(ok).rules.size() == 1);
    // The failing line number is the offending one, not the first.
    std::istringstream multi(
        R"({"match":{},"action":{"set_severity":"LOW"}})" "\n"
        R"({"match":{},"action":{}})" "\n");
    try {
        parse_rules(multi);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("scoring config parses every key") {
    std::istringstream in(
        "# comment line\n"
        "severity_weights = aggressive\n"
        "cap = 0.8     # trailing comment\n"
        "floor = 0.02\n"
        "tau = 5\n"
        "use_adjusted_severity = true\n"
        "alpha = 0.25\n"
        "confidence_threshold = 0.6\n"
        "criterion_weight.data_type = 2.5\n");
    ScoringConfig cfg = parse_scoring_config(in);
    CHECK(cfg.exposure.severity_weights.name == "aggressive");
    CHECK(cfg.exposure.severity_weights.weights[rank(Severity::Critical)] == 0.80);
    CHECK(cfg.exposure.cap == 0.8);
    CHECK(cfg.exposure.floor == 0.02);
    CHECK(cfg.exposure.tau == 5.0);
    CHECK(cfg.exposure.use_adjusted_severity);
    CHECK(cfg.modulation.alpha == 0.25);
    CHECK(cfg.criterion_weights.confidence_threshold == 0.6);
    CHECK(cfg.criterion_weights.weights.at("data_type") == 2.5);
    CHECK(cfg.criterion_weights.weights.at("environment") == 1.0);  // untouched
}

TEST_CASE("scoring config accepts explicit weight lists") {
    std::istringstream in("severity_weights = 0.01, 0.02, 0.1, 0.3, 0.6\n");
    ScoringConfig cfg = parse_scoring_config(in);
    CHECK(cfg.exposure.severity_weights.name == "custom");
    CHECK(cfg.exposure.severity_weights.weights ==
          std::array<double, 5>{0.01, 0.02, 0.1, 0.3, 0.6});
}

TEST_CASE("scoring config rejects bad input with ConfigError") {
    auto expect_throw = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            parse_scoring_config(in);
            FAIL("expected ConfigError for: " << text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_throw("capx = 0.5\n", "unknown key 'capx'");
    expect_throw("cap 0.5\n", "expected 'key = value'");
    expect_throw("cap = high\n", "not a number");
    expect_throw("cap = 1.5\n", "outside");
    expect_throw("tau = 0\n", "> 0");
    expect_throw("tau = -3\n", "> 0");
    expect_throw("alpha = 2\n", "outside");
    expect_throw("use_adjusted_severity = yes\n", "true|false");
    expect_throw("severity_weights = mystery\n", "severity_weights");
    expect_throw("severity_weights = 0.1,0.2,0.3\n", "5 comma-separated");
    expect_throw("severity_weights = 0.5,0.4,0.3,0.2,0.1\n", "non-decreasing");
    expect_throw("criterion_weight.bogus = 1\n", "unknown criterion");
    expect_throw("criterion_weight.data_type = 0\n", "> 0");
    expect_throw("cap = 0.5\nmystery = 1\n", "line 2");
}

TEST_CASE("scoring config overrides layer over a base") {
    std::istringstream first("cap = 0.9\ntau = 4\n");
    ScoringConfig base = parse_scoring_config(first);
    std::istringstream second("tau = 11\n");
    ScoringConfig layered = parse_scoring_config(second, base);
    CHECK(layered.exposure.cap == 0.9);   // kept from base
    CHECK(layered.exposure.tau == 11.0);  // overridden
    CHECK(layered.modulation.alpha == default_scoring_config().modulation.alpha);
}

TEST_CASE("empty config is the default config") {
    std::istringstream in("\n# nothing\n");
    CHECK(parse_scoring_config(in) == default_scoring_config());
}

TEST_CASE("breakdown export is ranked, complete, and deterministic") {
    Snapshot s;
    s.snapshot_id = "t";
    Asset a = mk_asset("low", {Severity::Low});
    Asset b = mk_asset("hot", {Severity::Critical, Severity::Critical}, 4);
    b.dc_criteria = {mk_assessment("data_type", "regulated_sensitive")};
    s.assets = {a, b};

    auto ranked = rank(score_snapshot(s, default_scoring_config()));
    const std::string text = breakdowns_to_jsonl(ranked);
    CHECK(breakdowns_to_jsonl(ranked) == text);

    // Two lines, rank 1 first, and the key fields all present.
    std::istringstream lines(text);
    std::string line1, line2, extra;
    REQUIRE(std::getline(lines, line1));
    REQUIRE(std::getline(lines, line2));
    CHECK(!std::getline(lines, extra));
    CHECK(line1.find("\"rank\":1") != std::string::npos);
    CHECK(line1.find("\"asset_id\":\"hot\"") != std::string::npos);
    CHECK(line1.find("\"criticality_index\"") != std::string::npos);
    CHECK(line2.find("\"rank\":2") != std::string::npos);
    CHECK(line2.find("\"asset_id\":\"low\"") != std::string::npos);
    // No context on "low": the index key is absent, components says zero.
    CHECK(line2.find("\"criticality_index\"") == std::string::npos);
    CHECK(line2.find("\"context_components\":0") != std::string::npos);
    for (const char* key : {"\"b_mis\"", "\"b_vec\"", "\"b_base\"", "\"dominant_channel\"",
                            "\"multiplier\"", "\"final_score\""}) {
        CHECK(line1.find(key) != std::string::npos);
        CHECK(line2.find(key) != std::string::npos);
    }
}
