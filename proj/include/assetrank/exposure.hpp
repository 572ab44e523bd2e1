#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assetrank/asset.hpp"
#include "assetrank/severity.hpp"

namespace assetrank {

// Per-severity miss weights, indexed by rank(Severity). Weights live in
// [0,1] and must be non-decreasing with severity.
struct SeverityWeightConfig {
    std::string name;
    std::array<double, kSeverityCount> weights{};

    double weight(Severity s) const { return weights[rank(s)]; }
    bool operator==(const SeverityWeightConfig&) const = default;
};

// Named weight schemes, from permissive to strict: baseline, conservative,
// very-conservative, ultra-conservative, aggressive, linear.
std::span<const SeverityWeightConfig> severity_weight_presets();

// nullptr if no preset carries that name.
const SeverityWeightConfig* find_severity_preset(std::string_view name);

// Candidate attack-path tolerance values used for sensitivity sweeps.
inline constexpr std::array<double, 5> kTauPresets = {3.0, 5.0, 7.0, 10.0, 15.0};

struct ExposureConfig {
    SeverityWeightConfig severity_weights;  // default: baseline preset
    double cap = 0.75;   // misconfiguration ceiling, in [0,1]
    double floor = 0.05; // minimum base exposure for in-scope assets, in [0,1]
    double tau = 7.0;    // attack-path tolerance, > 0
    bool use_adjusted_severity = false;

    bool operator==(const ExposureConfig&) const = default;
};

ExposureConfig default_exposure_config();

// Which evidence channel set the base exposure. Ties resolve in this order:
// attack vector beats misconfiguration beats floor.
enum class ExposureChannel {
    AttackVector,
    Misconfiguration,
    Floor,
};

constexpr std::string_view to_string(ExposureChannel ch) noexcept {
    switch (ch) {
        case ExposureChannel::AttackVector: return "ATTACK_VECTOR";
        case ExposureChannel::Misconfiguration: return "MISCONFIGURATION";
        case ExposureChannel::Floor: return "FLOOR";
    }
    return "FLOOR";
}

struct ExposureBreakdown {
    double b_mis = 0.0;
    double b_vec = 0.0;
    double b_base = 0.0;
    ExposureChannel dominant = ExposureChannel::Floor;

    bool operator==(const ExposureBreakdown&) const = default;
};

// Saturating union of independent miss probabilities, scaled by the cap:
//   cap * (1 - prod_i(1 - w(sev_i)))
// No findings -> 0. The survival product is accumulated bucketed by severity
// in rank order, so the result is bitwise independent of finding order and a
// zero-weight finding is an exact no-op.
double misconfiguration_exposure(std::span<const Finding> findings, const ExposureConfig& cfg);

// 1 - exp(-path_count / tau), i.e. saturating in the number of confirmed
// paths; 0 paths -> 0, always < 1.
double attack_vector_exposure(std::int64_t path_count, const ExposureConfig& cfg);

// max(b_mis, b_vec, floor) with the dominant channel recorded.
ExposureBreakdown base_exposure(const Asset& asset, const ExposureConfig& cfg);

}  // namespace assetrank
