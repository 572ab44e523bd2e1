#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assetrank/asset.hpp"
#include "assetrank/criteria.hpp"

namespace assetrank {

// Relative importance of criteria inside the soft-max aggregation, plus the
// confidence gate. Weights must be > 0 for every catalog criterion;
// assessments with confidence strictly below the threshold are ignored.
struct CriterionWeights {
    std::map<std::string, double> weights;  // criterion_id -> weight
    double confidence_threshold = 0.5;

    bool operator==(const CriterionWeights&) const = default;
};

// Uniform weight 1.0 over the full catalog.
CriterionWeights default_criterion_weights();

// Per-asset normalized context components, each in [0,1] when present.
// Absent means "no usable signal", which is different from 0.
struct ContextVector {
    std::optional<double> anomaly;
    std::optional<double> blast_radius;
    std::optional<double> business_function;
    std::optional<double> data_criticality;

    bool operator==(const ContextVector&) const = default;
};

// Aggregated criticality: index = 1 - prod(1 - v_i)^(1/k) over the k present
// components. k == 0 means no context at all; the index value is then a
// neutral placeholder and the multiplier must come out exactly 1.
struct ContextIndex {
    double index = 0.5;
    int components = 0;  // k

    bool operator==(const ContextIndex&) const = default;
};

struct ModulationConfig {
    double alpha = 0.20;  // modulation strength, in [0,1]

    bool operator==(const ModulationConfig&) const = default;
};

// Named modulation strengths.
struct AlphaPreset {
    std::string_view name;
    double alpha;
};
std::span<const AlphaPreset> alpha_presets();
const AlphaPreset* find_alpha_preset(std::string_view name);

// Midrank percentile of each value within its peer group:
//   (count_less + 0.5 * count_equal) / group_size
// A singleton group yields 0.5. Input is (asset_id, raw value); the peer key
// function decides group membership by asset id.
std::map<std::string, double> percentile_normalize(
    std::span<const std::pair<std::string, double>> values,
    const std::function<std::string(const std::string& asset_id)>& peer_key);

// Weighted-geometric soft maximum over one criterion family:
//   v = 1 - prod_i (1 - x_i)^(w_i / sum_j w_j)
// Not-applicable assessments and assessments below the confidence threshold
// are excluded before the weights are renormalized; if nothing survives the
// result is absent. Any single x_i = 1 forces v = 1. Assessments outside
// `family`, duplicated criteria, or missing scores are contract violations
// (std::invalid_argument).
std::optional<double> soft_max_criteria(std::span<const CriterionAssessment> assessments,
                                        CriterionFamily family,
                                        const CriterionWeights& weights);

// Unweighted geometric aggregation of however many components are present.
ContextIndex criticality_index(const ContextVector& v);

// clip(1 + alpha * (2 * index - 1), 1 - alpha, 1 + alpha); exactly 1 when no
// context components were present.
double modulation_multiplier(const ContextIndex& index, const ModulationConfig& cfg);

}  // namespace assetrank
