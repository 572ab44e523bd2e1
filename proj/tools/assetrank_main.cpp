// assetrank: context-aware scoring of security findings over asset snapshots.
//
// Subcommands: score, generate, apply-rules, sweep {severity,tau,alpha,ai-adjust},
// validate. Exit codes: 0 success, 1 I/O failure, 2 validation/configuration
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "assetrank/analysis.hpp"
#include "assetrank/errors.hpp"
#include "assetrank/generator.hpp"
#include "assetrank/io.hpp"
#include "assetrank/rules.hpp"
#include "assetrank/scoring.hpp"

namespace {

namespace fs = std::filesystem;
using namespace assetrank;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

// Validation failures exit with kExitInvalid after the report is printed.
struct ValidationFailure {
    std::string report;
};

struct ConfigOverrides {
    std::string config_path;
    std::string weights;  // preset name or five comma-separated values
    double cap = -1.0;
    double floor = -1.0;
    double tau = -1.0;
    double alpha = -1.0;
    double confidence_threshold = -1.0;
    bool use_adjusted = false;
    bool use_adjusted_set = false;
};

void add_config_flags(CLI::App* cmd, ConfigOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "Scoring config file (key = value lines)");
    cmd->add_option("--weights", ov.weights,
                    "Severity weights: preset name or five comma-separated values");
    cmd->add_option("--cap", ov.cap, "Misconfiguration channel cap, in [0,1]");
    cmd->add_option("--floor", ov.floor, "Base exposure floor, in [0,1]");
    cmd->add_option("--tau", ov.tau, "Attack-path tolerance, > 0");
    cmd->add_option("--alpha", ov.alpha, "Context modulation strength, in [0,1]");
    cmd->add_option("--confidence-threshold", ov.confidence_threshold,
                    "Minimum assessment confidence, in [0,1]");
    cmd->add_flag("--use-adjusted", [&ov](std::int64_t) { ov.use_adjusted = ov.use_adjusted_set = true; },
                  "Score with adjusted severities where present");
}

ScoringConfig resolve_config(const ConfigOverrides& ov) {
    ScoringConfig cfg =
        ov.config_path.empty() ? default_scoring_config() : load_scoring_config(ov.config_path);
    // Flags override file values override defaults; reuse the file parser so
    // range checks live in one place.
    std::ostringstream patch;
    patch.precision(17);
    if (!ov.weights.empty()) patch << "severity_weights = " << ov.weights << "\n";
    if (ov.cap >= 0.0) patch << "cap = " << ov.cap << "\n";
    if (ov.floor >= 0.0) patch << "floor = " << ov.floor << "\n";
    if (ov.tau >= 0.0) patch << "tau = " << ov.tau << "\n";
    if (ov.alpha >= 0.0) patch << "alpha = " << ov.alpha << "\n";
    if (ov.confidence_threshold >= 0.0) {
        patch << "confidence_threshold = " << ov.confidence_threshold << "\n";
    }
    if (ov.use_adjusted_set) patch << "use_adjusted_severity = true\n";
    const std::string text = patch.str();
    if (text.empty()) return cfg;
    std::istringstream in(text);
    return parse_scoring_config(in, std::move(cfg));
}

Snapshot load_or_fail(const std::string& path) {
    SnapshotValidation result = load_snapshot(path, format_from_path(path));
    if (!result.ok()) throw ValidationFailure{result.report.to_string()};
    return std::move(*result.snapshot);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

std::vector<double> parse_value_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": not a number: '" + item + "'");
        }
    }
    return out;
}

// --- subcommand bodies -----------------------------------------------------

int run_score(const std::string& snapshot_path, const ConfigOverrides& ov,
              const std::string& out_dir, unsigned jobs) {
    const ScoringConfig cfg = resolve_config(ov);
    const Snapshot snap = load_or_fail(snapshot_path);
    auto ranked = rank(score_snapshot(snap, cfg, jobs));

    ensure_dir(out_dir);
    write_text(out_dir + "/scores.jsonl", breakdowns_to_jsonl(ranked));
    std::vector<double> finals;
    finals.reserve(ranked.size());
    for (const auto& b : ranked) finals.push_back(b.final_score);
    export_csv(bin_distribution(finals), out_dir + "/score_bins.csv");

    std::cout << "scored " << ranked.size() << " of " << snap.assets.size()
              << " assets -> " << out_dir << "/scores.jsonl, " << out_dir << "/score_bins.csv\n";
    return kExitOk;
}

int run_generate(GeneratorConfig cfg, const std::string& out_path) {
    const Snapshot snap = generate_snapshot(cfg);
    write_snapshot(snap, out_path);

    std::size_t with_findings = 0, with_vectors = 0;
    for (const Asset& a : snap.assets) {
        if (!a.findings.empty()) ++with_findings;
        if (a.attack_vectors.path_count > 0) ++with_vectors;
    }
    const double n = snap.assets.empty() ? 1.0 : static_cast<double>(snap.assets.size());
    std::cout << "generated " << snap.assets.size() << " assets -> " << out_path << "\n"
              << "  finding rate: " << with_findings / n << "\n"
              << "  attack-vector rate: " << with_vectors / n << "\n";
    return kExitOk;
}

int run_apply_rules(const std::string& snapshot_path, const std::string& rules_path,
                    const std::string& out_path) {
    const RuleSet rules = load_rules(rules_path);
    Snapshot snap = load_or_fail(snapshot_path);
    snap = apply_severity_rules(std::move(snap), rules);
    snap = classify_context(std::move(snap), rules);
    // Rule output goes through the same validation gate as any ingest.
    SnapshotValidation validated = validate_snapshot(snap);
    if (!validated.ok()) throw ValidationFailure{validated.report.to_string()};
    write_snapshot(*validated.snapshot, out_path);
    std::cout << "applied " << rules.rules.size() << " rules -> " << out_path << "\n";
    return kExitOk;
}

int run_sweep_severity(const std::string& snapshot_path, const ConfigOverrides& ov,
                       const std::string& presets_arg, const std::string& out_dir) {
    const ScoringConfig cfg = resolve_config(ov);
    const Snapshot snap = load_or_fail(snapshot_path);

    std::vector<SeverityWeightConfig> presets;
    if (presets_arg == "all") {
        auto all = severity_weight_presets();
        presets.assign(all.begin(), all.end());
    } else {
        std::stringstream ss(presets_arg);
        std::string name;
        while (std::getline(ss, name, ',')) {
            const SeverityWeightConfig* p = find_severity_preset(name);
            if (!p) throw ConfigError("unknown severity preset '" + name + "'");
            presets.push_back(*p);
        }
        if (presets.empty()) throw ConfigError("no severity presets given");
    }

    const SeveritySweepResult result = severity_sweep(snap, presets, cfg);
    ensure_dir(out_dir);
    for (const SeveritySweepEntry& entry : result.entries) {
        export_csv(entry, out_dir + "/severity_curve_" + entry.preset + ".csv");
    }
    export_severity_bins_csv(result, out_dir + "/severity_bins.csv");
    std::cout << "severity sweep over " << result.entries.size() << " presets, "
              << result.subset_size << " assets -> " << out_dir << "\n";
    return kExitOk;
}

int run_sweep_tau(const std::string& snapshot_path, const ConfigOverrides& ov,
                  const std::string& values_arg, int p_max, const std::string& out_dir) {
    const ScoringConfig cfg = resolve_config(ov);
    const Snapshot snap = load_or_fail(snapshot_path);
    const std::vector<double> taus = parse_value_list(values_arg, "--values");
    const TauSweepResult result = tau_sweep(snap, taus, cfg, p_max);
    ensure_dir(out_dir);
    export_csv(result, out_dir + "/tau_means.csv");
    export_tau_curves_csv(result, out_dir + "/tau_curves.csv");
    std::cout << "tau sweep over " << result.points.size() << " values, subset "
              << result.subset_size << " assets -> " << out_dir << "\n";
    return kExitOk;
}

int run_sweep_alpha(const std::string& snapshot_path, const ConfigOverrides& ov,
                    const std::string& values_arg, const std::string& out_dir) {
    const ScoringConfig cfg = resolve_config(ov);
    const Snapshot snap = load_or_fail(snapshot_path);

    std::vector<double> alphas;
    if (values_arg == "presets") {
        for (const AlphaPreset& p : alpha_presets()) alphas.push_back(p.alpha);
    } else {
        alphas = parse_value_list(values_arg, "--values");
    }
    const AlphaSweepResult result = alpha_sweep(snap, alphas, cfg);
    ensure_dir(out_dir);
    export_csv(result, out_dir + "/alpha_means.csv");
    export_alpha_bins_csv(result, out_dir + "/alpha_bins.csv");
    std::cout << "alpha sweep over " << result.points.size() << " values, subset "
              << result.subset_size << " assets (mean index "
              << result.mean_index << ") -> " << out_dir << "\n";
    return kExitOk;
}

int run_sweep_ai_adjust(const std::string& snapshot_path, const ConfigOverrides& ov,
                        const std::string& rules_path, const std::string& out_dir) {
    const ScoringConfig cfg = resolve_config(ov);
    Snapshot snap = load_or_fail(snapshot_path);
    if (!rules_path.empty()) {
        snap = apply_severity_rules(std::move(snap), load_rules(rules_path));
    }
    const auto impacts = adjustment_impact(snap, cfg);

    std::vector<double> before, after;
    before.reserve(impacts.size());
    after.reserve(impacts.size());
    std::string impact_csv = "asset_id,score_original,score_adjusted\n";
    for (const AdjustmentImpact& im : impacts) {
        before.push_back(im.score_original);
        after.push_back(im.score_adjusted);
        char buf[64];
        std::snprintf(buf, sizeof(buf), ",%.6f,%.6f\n", im.score_original, im.score_adjusted);
        impact_csv += im.asset_id + buf;
    }
    const auto deltas = adjustment_delta(bin_distribution(before), bin_distribution(after));

    ensure_dir(out_dir);
    write_text(out_dir + "/ai_adjust_impact.csv", impact_csv);
    export_csv(std::span<const BinDelta>(deltas), out_dir + "/ai_adjust_delta.csv");
    std::cout << "adjustment impact over " << impacts.size() << " assets -> " << out_dir << "\n";
    return kExitOk;
}

int run_validate(const std::string& snapshot_path) {
    SnapshotValidation result = load_snapshot(snapshot_path, format_from_path(snapshot_path));
    if (!result.ok()) {
        std::cerr << result.report.to_string();
        std::cerr << "invalid snapshot: " << result.report.issues.size() << " issue(s)\n";
        return kExitInvalid;
    }
    std::cout << "valid snapshot: " << result.snapshot->assets.size() << " assets\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Context-aware security scoring over asset snapshots"};
    app.require_subcommand(1);

    // score
    auto* score_cmd = app.add_subcommand("score", "Score a snapshot and rank assets");
    std::string score_snapshot_path, score_out_dir = "out";
    unsigned score_jobs = 1;
    ConfigOverrides score_ov;
    score_cmd->add_option("--snapshot", score_snapshot_path, "Snapshot file (JSONL or CSV)")
        ->required();
    score_cmd->add_option("--out-dir", score_out_dir, "Output directory");
    score_cmd->add_option("--jobs", score_jobs, "Worker threads (results identical for any N)")
        ->check(CLI::Range(1u, 256u));
    add_config_flags(score_cmd, score_ov);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic snapshot");
    GeneratorConfig gen_cfg = default_generator_config();
    std::string gen_out = "snapshot.jsonl";
    gen_cmd->add_option("--count", gen_cfg.asset_count, "Number of assets")->required();
    gen_cmd->add_option("--seed", gen_cfg.seed, "PRNG seed");
    gen_cmd->add_option("--out", gen_out, "Output snapshot path");
    gen_cmd->add_option("--finding-rate", gen_cfg.finding_rate, "Share of assets with findings");
    gen_cmd->add_option("--attack-vector-rate", gen_cfg.attack_vector_rate,
                        "Share of assets with attack paths");
    gen_cmd->add_option("--context-coverage", gen_cfg.context_coverage,
                        "Share of assets with criterion context");
    gen_cmd->add_option("--mean-findings", gen_cfg.mean_findings,
                        "Mean findings per affected asset");
    gen_cmd->add_option("--path-min", gen_cfg.path_count_min, "Minimum attack-path count");
    gen_cmd->add_option("--path-max", gen_cfg.path_count_max, "Maximum attack-path count");

    // apply-rules
    auto* rules_cmd = app.add_subcommand("apply-rules", "Apply severity/context rules");
    std::string rules_snapshot_path, rules_path, rules_out;
    rules_cmd->add_option("--snapshot", rules_snapshot_path, "Snapshot file")->required();
    rules_cmd->add_option("--rules", rules_path, "Rules file (JSONL)")->required();
    rules_cmd->add_option("--out", rules_out, "Output snapshot path")->required();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sensitivity sweeps");
    sweep_cmd->require_subcommand(1);

    auto* sev_cmd = sweep_cmd->add_subcommand("severity", "Severity-weight preset sweep");
    std::string sev_snapshot, sev_presets = "all", sev_out = "out";
    ConfigOverrides sev_ov;
    sev_cmd->add_option("--snapshot", sev_snapshot, "Snapshot file")->required();
    sev_cmd->add_option("--presets", sev_presets, "'all' or comma-separated preset names");
    sev_cmd->add_option("--out-dir", sev_out, "Output directory");
    add_config_flags(sev_cmd, sev_ov);

    auto* tau_cmd = sweep_cmd->add_subcommand("tau", "Attack-path tolerance sweep");
    std::string tau_snapshot, tau_values = "3,5,7,10,15", tau_out = "out";
    int tau_p_max = 30;
    ConfigOverrides tau_ov;
    tau_cmd->add_option("--snapshot", tau_snapshot, "Snapshot file")->required();
    tau_cmd->add_option("--values", tau_values, "Comma-separated tau values");
    tau_cmd->add_option("--p-max", tau_p_max, "Theoretical curve path-count limit");
    tau_cmd->add_option("--out-dir", tau_out, "Output directory");
    add_config_flags(tau_cmd, tau_ov);

    auto* alpha_cmd = sweep_cmd->add_subcommand("alpha", "Modulation strength sweep");
    std::string alpha_snapshot, alpha_values = "presets", alpha_out = "out";
    ConfigOverrides alpha_ov;
    alpha_cmd->add_option("--snapshot", alpha_snapshot, "Snapshot file")->required();
    alpha_cmd->add_option("--values", alpha_values,
                          "'presets' or comma-separated alpha values");
    alpha_cmd->add_option("--out-dir", alpha_out, "Output directory");
    add_config_flags(alpha_cmd, alpha_ov);

    auto* adj_cmd = sweep_cmd->add_subcommand("ai-adjust", "Severity-adjustment impact report");
    std::string adj_snapshot, adj_rules, adj_out = "out";
    ConfigOverrides adj_ov;
    adj_cmd->add_option("--snapshot", adj_snapshot, "Snapshot file")->required();
    adj_cmd->add_option("--rules", adj_rules, "Apply this rules file before comparing");
    adj_cmd->add_option("--out-dir", adj_out, "Output directory");
    add_config_flags(adj_cmd, adj_ov);

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Validate a snapshot file");
    std::string validate_snapshot_path;
    validate_cmd->add_option("--snapshot", validate_snapshot_path, "Snapshot file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (score_cmd->parsed()) {
            return run_score(score_snapshot_path, score_ov, score_out_dir, score_jobs);
        }
        if (gen_cmd->parsed()) return run_generate(gen_cfg, gen_out);
        if (rules_cmd->parsed()) return run_apply_rules(rules_snapshot_path, rules_path, rules_out);
        if (sweep_cmd->parsed()) {
            if (sev_cmd->parsed()) return run_sweep_severity(sev_snapshot, sev_ov, sev_presets, sev_out);
            if (tau_cmd->parsed()) return run_sweep_tau(tau_snapshot, tau_ov, tau_values, tau_p_max, tau_out);
            if (alpha_cmd->parsed()) return run_sweep_alpha(alpha_snapshot, alpha_ov, alpha_values, alpha_out);
            if (adj_cmd->parsed()) return run_sweep_ai_adjust(adj_snapshot, adj_ov, adj_rules, adj_out);
        }
        if (validate_cmd->parsed()) return run_validate(validate_snapshot_path);
    } catch (const ValidationFailure& e) {
        std::cerr << e.report << "error: snapshot failed validation\n";
        return kExitInvalid;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
