#include "assetrank/context.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace assetrank {
namespace {

const std::array<AlphaPreset, 5>& alpha_preset_table() {
    static const std::array<AlphaPreset, 5> kPresets = {{
        {"conservative", 0.10},
        {"moderate", 0.15},
        {"baseline", 0.20},
        {"aggressive", 0.30},
        {"very-aggressive", 0.40},
    }};
    return kPresets;
}

}  // namespace

CriterionWeights default_criterion_weights() {
    CriterionWeights w;
    for (const auto& spec : criterion_catalog()) {
        w.weights.emplace(std::string(spec.id), 1.0);
    }
    return w;
}

std::span<const AlphaPreset> alpha_presets() { return alpha_preset_table(); }

const AlphaPreset* find_alpha_preset(std::string_view name) {
    for (const auto& p : alpha_preset_table()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

std::map<std::string, double> percentile_normalize(
    std::span<const std::pair<std::string, double>> values,
    const std::function<std::string(const std::string&)>& peer_key) {
    // Bucket raw values per peer group, then midrank each member:
    // (count_less + 0.5 * count_equal) / group_size. Singletons get 0.5.
    std::unordered_map<std::string, std::vector<double>> groups;
    for (const auto& [asset_id, raw] : values) {
        groups[peer_key(asset_id)].push_back(raw);
    }
    for (auto& [key, vals] : groups) std::sort(vals.begin(), vals.end());

    std::map<std::string, double> out;
    for (const auto& [asset_id, raw] : values) {
        const auto& vals = groups[peer_key(asset_id)];
        const auto lo = std::lower_bound(vals.begin(), vals.end(), raw) - vals.begin();
        const auto hi = std::upper_bound(vals.begin(), vals.end(), raw) - vals.begin();
        const double less = static_cast<double>(lo);
        const double equal = static_cast<double>(hi - lo);
        out[asset_id] = (less + 0.5 * equal) / static_cast<double>(vals.size());
    }
    return out;
}

std::optional<double> soft_max_criteria(std::span<const CriterionAssessment> assessments,
                                        CriterionFamily family,
                                        const CriterionWeights& weights) {
    // Collect the assessments that survive the gates, keyed by criterion so
    // aggregation order is the fixed catalog order, not input order.
    std::unordered_map<std::string_view, const CriterionAssessment*> included;
    std::unordered_map<std::string_view, bool> seen;
    for (const auto& ca : assessments) {
        const CriterionSpec* spec = find_criterion(ca.criterion_id);
        if (!spec || spec->family != family) {
            throw std::invalid_argument("soft_max_criteria: assessment '" + ca.criterion_id +
                                        "' is not a " + std::string(to_string(family)) +
                                        " criterion");
        }
        if (!seen.emplace(spec->id, true).second) {
            throw std::invalid_argument("soft_max_criteria: duplicate criterion '" +
                                        ca.criterion_id + "'");
        }
        if (ca.not_applicable()) continue;
        if (!ca.score) {
            throw std::invalid_argument("soft_max_criteria: assessment '" + ca.criterion_id +
                                        "' has no score attached");
        }
        if (ca.confidence < weights.confidence_threshold) continue;
        included.emplace(spec->id, &ca);
    }
    if (included.empty()) return std::nullopt;

    double weight_sum = 0.0;
    for (const auto& spec : criterion_catalog()) {
        if (!included.contains(spec.id)) continue;
        auto it = weights.weights.find(std::string(spec.id));
        const double w = it == weights.weights.end() ? 1.0 : it->second;
        if (!(w > 0.0)) {
            throw std::invalid_argument("soft_max_criteria: weight for '" +
                                        std::string(spec.id) + "' must be > 0");
        }
        weight_sum += w;
    }

    double survive = 1.0;
    for (const auto& spec : criterion_catalog()) {
        auto it = included.find(spec.id);
        if (it == included.end()) continue;
        auto wit = weights.weights.find(std::string(spec.id));
        const double w = wit == weights.weights.end() ? 1.0 : wit->second;
        survive *= std::pow(1.0 - *it->second->score, w / weight_sum);
    }
    return 1.0 - survive;
}

ContextIndex criticality_index(const ContextVector& v) {
    ContextIndex out;
    const std::array<const std::optional<double>*, 4> components = {
        &v.anomaly, &v.blast_radius, &v.business_function, &v.data_criticality};
    int k = 0;
    for (const auto* c : components) {
        if (c->has_value()) ++k;
    }
    out.components = k;
    if (k == 0) return out;  // neutral placeholder index 0.5

    const double exponent = 1.0 / static_cast<double>(k);
    double survive = 1.0;
    for (const auto* c : components) {
        if (c->has_value()) survive *= std::pow(1.0 - **c, exponent);
    }
    out.index = 1.0 - survive;
    return out;
}

double modulation_multiplier(const ContextIndex& index, const ModulationConfig& cfg) {
    if (index.components == 0) return 1.0;
    const double m = 1.0 + cfg.alpha * (2.0 * index.index - 1.0);
    return std::clamp(m, 1.0 - cfg.alpha, 1.0 + cfg.alpha);
}

}  // namespace assetrank
