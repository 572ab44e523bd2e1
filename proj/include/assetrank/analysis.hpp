#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assetrank/rules.hpp"
#include "assetrank/scoring.hpp"

namespace assetrank {

// Reporting bins over the final-score axis. Lower bound inclusive, upper
// exclusive, except the top bin which closes at 1.0.
enum class ScoreBin : std::uint8_t {
    Info = 0,     // [0.0, 0.2)
    Low = 1,      // [0.2, 0.4)
    Medium = 2,   // [0.4, 0.8)
    High = 3,     // [0.8, 0.9)
    Critical = 4, // [0.9, 1.0]
};

inline constexpr std::size_t kBinCount = 5;
inline constexpr std::array<double, kBinCount + 1> kBinEdges = {0.0, 0.2, 0.4, 0.8, 0.9, 1.0};

constexpr std::string_view to_string(ScoreBin b) noexcept {
    switch (b) {
        case ScoreBin::Info: return "INFO";
        case ScoreBin::Low: return "LOW";
        case ScoreBin::Medium: return "MEDIUM";
        case ScoreBin::High: return "HIGH";
        case ScoreBin::Critical: return "CRITICAL";
    }
    return "INFO";
}

// Scores outside [0,1] are a contract violation (std::invalid_argument) —
// the pipeline cannot produce them.
ScoreBin bin_of(double score);

struct BinDistribution {
    std::array<double, kBinCount> shares{};  // sum to 1 when total > 0
    std::array<std::size_t, kBinCount> counts{};
    std::size_t total = 0;

    double share(ScoreBin b) const { return shares[static_cast<std::size_t>(b)]; }
    bool operator==(const BinDistribution&) const = default;
};

BinDistribution bin_distribution(std::span<const double> scores);

// --- severity-weight sweep -------------------------------------------------

// One (highest effective severity, finding count) cellmean of b_mis.
struct SeverityCurvePoint {
    Severity group;          // highest effective severity on the asset
    std::int64_t finding_count;
    double mean_b_mis = 0.0;
    std::size_t assets = 0;
};

struct SeveritySweepEntry {
    std::string preset;  // severity weight scheme name
    std::vector<SeverityCurvePoint> curve;  // ordered by (group, finding_count)
    BinDistribution b_mis_bins;  // over in-scope assets with findings
};

struct SeveritySweepResult {
    std::vector<SeveritySweepEntry> entries;
    std::size_t subset_size = 0;  // in-scope assets with >= 1 finding
};

SeveritySweepResult severity_sweep(const Snapshot& snapshot,
                                   std::span<const SeverityWeightConfig> presets,
                                   const ScoringConfig& cfg);

// --- tau sweep ---------------------------------------------------------------

struct TauSweepPoint {
    double tau = 0.0;
    std::optional<double> mean_b_vec;  // absent when no asset has paths
    std::vector<double> curve;         // theoretical b_vec for p = 1..p_max
};

struct TauSweepResult {
    std::vector<TauSweepPoint> points;  // strictly increasing tau
    std::size_t subset_size = 0;        // assets with path_count >= 1
    int p_max = 30;
};

// Theoretical channel response 1 - exp(-p/tau) for p = 1..p_max.
std::vector<double> attack_vector_curve(double tau, int p_max);

// Values must be strictly increasing, > 0, and non-empty (ConfigError).
TauSweepResult tau_sweep(const Snapshot& snapshot, std::span<const double> taus,
                         const ScoringConfig& cfg, int p_max = 30);

// --- alpha sweep ---------------------------------------------------------------

struct AlphaSweepPoint {
    double alpha = 0.0;
    double mean_final = 0.0;
    BinDistribution final_bins;
};

struct AlphaSweepResult {
    std::vector<AlphaSweepPoint> points;  // strictly increasing alpha
    BinDistribution base_bins;            // alpha-independent b_base distribution
    double mean_index = 0.0;              // mean criticality index over the subset
    std::size_t subset_size = 0;          // in-scope assets with bfc or dc context
};

// Values must be strictly increasing, within [0,1], non-empty (ConfigError).
// The subset is restricted to in-scope assets whose context vector has a
// business-function or data-criticality component after exclusions.
AlphaSweepResult alpha_sweep(const Snapshot& snapshot, std::span<const double> alphas,
                             const ScoringConfig& cfg);

// --- severity-adjustment delta report ------------------------------------------

struct BinDelta {
    ScoreBin bin = ScoreBin::Info;
    double before_share = 0.0;
    double after_share = 0.0;
    double delta = 0.0;  // after - before
};

// Per-bin share movement; zero-delta bins are dropped when filter_zero is
// set. Deltas sum to 0 when both distributions count the same population.
std::vector<BinDelta> adjustment_delta(const BinDistribution& before,
                                       const BinDistribution& after,
                                       bool filter_zero = false);

// --- CSV export --------------------------------------------------------------

// All exporters: header row, stable column order, fixed 6-decimal reals —
// byte-identical output for identical inputs. Throw IoError on unwritable
// paths.
void export_csv(const BinDistribution& dist, const std::string& path);
void export_csv(const TauSweepResult& result, const std::string& path);        // mean rows
void export_tau_curves_csv(const TauSweepResult& result, const std::string& path);
void export_csv(const AlphaSweepResult& result, const std::string& path);      // mean rows
void export_alpha_bins_csv(const AlphaSweepResult& result, const std::string& path);
void export_csv(const SeveritySweepEntry& entry, const std::string& path);     // one curve
void export_severity_bins_csv(const SeveritySweepResult& result, const std::string& path);
void export_csv(std::span<const BinDelta> deltas, const std::string& path);

}  // namespace assetrank
