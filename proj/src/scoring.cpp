#include "assetrank/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

namespace assetrank {

ScoringConfig default_scoring_config() {
    ScoringConfig cfg;
    cfg.exposure = default_exposure_config();
    cfg.criterion_weights = default_criterion_weights();
    return cfg;
}

PeerKeyFn default_peer_key() {
    return [](const Asset& a) { return a.vendor + "\x1f" + a.asset_type; };
}

ContextVector build_context(const Asset& asset, const ScoringConfig& cfg,
                            std::optional<double> anomaly_pct_from_raw,
                            std::optional<double> blast_pct_from_raw) {
    ContextVector v;
    // An explicit percentile is upstream-authoritative and beats one derived
    // from the raw signal.
    v.anomaly = asset.structural.anomaly_percentile ? asset.structural.anomaly_percentile
                                                    : anomaly_pct_from_raw;
    v.blast_radius = asset.structural.blast_percentile ? asset.structural.blast_percentile
                                                       : blast_pct_from_raw;
    v.business_function = soft_max_criteria(asset.bfc_criteria,
                                            CriterionFamily::BusinessFunction,
                                            cfg.criterion_weights);
    v.data_criticality = soft_max_criteria(asset.dc_criteria, CriterionFamily::DataCriticality,
                                           cfg.criterion_weights);
    return v;
}

ScoreBreakdown score_asset(const Asset& asset, const ContextVector& context,
                           const ScoringConfig& cfg) {
    ScoreBreakdown out;
    out.asset_id = asset.asset_id;
    out.exposure = base_exposure(asset, cfg.exposure);
    out.context = context;
    out.index = criticality_index(context);
    out.multiplier = modulation_multiplier(out.index, cfg.modulation);
    // The min() is the only clamp in the pipeline.
    out.final_score = std::min(1.0, out.exposure.b_base * out.multiplier);
    return out;
}

std::vector<ScoreBreakdown> score_snapshot(const Snapshot& snapshot, const ScoringConfig& cfg,
                                           unsigned jobs, const PeerKeyFn& peer_key) {
    // Snapshot-wide percentile pass first. The reference population for each
    // signal is every asset carrying the raw value; derived percentiles are
    // only consumed by assets without an explicit one.
    std::vector<std::pair<std::string, double>> anomaly_raws;
    std::vector<std::pair<std::string, double>> blast_raws;
    std::unordered_map<std::string, std::string> keys;
    for (const Asset& a : snapshot.assets) {
        if (a.structural.anomaly_raw) anomaly_raws.emplace_back(a.asset_id, *a.structural.anomaly_raw);
        if (a.structural.blast_raw) blast_raws.emplace_back(a.asset_id, *a.structural.blast_raw);
        keys.emplace(a.asset_id, peer_key(a));
    }
    auto by_id = [&keys](const std::string& asset_id) { return keys.at(asset_id); };
    const auto anomaly_pct = percentile_normalize(anomaly_raws, by_id);
    const auto blast_pct = percentile_normalize(blast_raws, by_id);

    std::vector<const Asset*> scope;
    for (const Asset& a : snapshot.assets) {
        if (in_scope(a)) scope.push_back(&a);
    }

    std::vector<ScoreBreakdown> out(scope.size());
    auto score_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Asset& a = *scope[i];
            auto find_pct = [&](const std::map<std::string, double>& m) -> std::optional<double> {
                auto it = m.find(a.asset_id);
                if (it == m.end()) return std::nullopt;
                return it->second;
            };
            ContextVector ctx = build_context(a, cfg, find_pct(anomaly_pct), find_pct(blast_pct));
            out[i] = score_asset(a, ctx, cfg);
        }
    };

    if (jobs <= 1 || scope.size() < 2) {
        score_range(0, scope.size());
        return out;
    }
    // Static chunking onto an indexed output keeps results bitwise identical
    // for any jobs value.
    const std::size_t n = scope.size();
    const unsigned workers = std::min<std::size_t>(jobs, n);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        threads.emplace_back(score_range, begin, end);
    }
    for (auto& t : threads) t.join();
    return out;
}

std::vector<ScoreBreakdown> rank(std::vector<ScoreBreakdown> breakdowns) {
    std::sort(breakdowns.begin(), breakdowns.end(),
              [](const ScoreBreakdown& a, const ScoreBreakdown& b) {
                  if (a.final_score != b.final_score) return a.final_score > b.final_score;
                  return a.asset_id < b.asset_id;
              });
    return breakdowns;
}

}  // namespace assetrank
