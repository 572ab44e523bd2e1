#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "assetrank/asset.hpp"
#include "assetrank/context.hpp"
#include "assetrank/exposure.hpp"

namespace assetrank {

struct ScoringConfig {
    ExposureConfig exposure;
    ModulationConfig modulation;
    CriterionWeights criterion_weights;

    bool operator==(const ScoringConfig&) const = default;
};

ScoringConfig default_scoring_config();

// Full per-asset scoring trace. `final_score` = min(1, b_base * multiplier);
// the min is the only clamp in the pipeline.
struct ScoreBreakdown {
    std::string asset_id;
    ExposureBreakdown exposure;
    ContextVector context;
    ContextIndex index;
    double multiplier = 1.0;
    double final_score = 0.0;

    bool operator==(const ScoreBreakdown&) const = default;
};

// Peer-group key used to bucket assets for percentile normalization.
using PeerKeyFn = std::function<std::string(const Asset&)>;

// Default peer group: (vendor, asset_type).
PeerKeyFn default_peer_key();

// Score one asset against an already-normalized context vector. Pure: no
// snapshot-wide work happens here.
ScoreBreakdown score_asset(const Asset& asset, const ContextVector& context,
                           const ScoringConfig& cfg);

// Builds the context vector for one asset from its criteria and structural
// percentiles (explicit percentiles win over normalized raws supplied via
// the two optional overrides).
ContextVector build_context(const Asset& asset, const ScoringConfig& cfg,
                            std::optional<double> anomaly_pct_from_raw = {},
                            std::optional<double> blast_pct_from_raw = {});

// Scores every in-scope asset of the snapshot, output in input order.
// Percentile normalization of raw structural signals runs once, snapshot-
// wide, before any per-asset scoring. `jobs` >= 1 selects the parallelism
// degree; results are bitwise independent of it.
std::vector<ScoreBreakdown> score_snapshot(const Snapshot& snapshot, const ScoringConfig& cfg,
                                           unsigned jobs = 1,
                                           const PeerKeyFn& peer_key = default_peer_key());

// Stable ranking: final score descending, asset_id ascending on ties.
std::vector<ScoreBreakdown> rank(std::vector<ScoreBreakdown> breakdowns);

}  // namespace assetrank
