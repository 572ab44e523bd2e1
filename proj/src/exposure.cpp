#include "assetrank/exposure.hpp"

#include <array>
#include <cmath>

namespace assetrank {
namespace {

const std::array<SeverityWeightConfig, 6>& presets() {
    static const std::array<SeverityWeightConfig, 6> kPresets = {{
        {"baseline", {0.002, 0.02, 0.08, 0.35, 0.70}},
        {"conservative", {0.0005, 0.008, 0.035, 0.25, 0.50}},
        {"very-conservative", {0.0002, 0.004, 0.02, 0.18, 0.40}},
        {"ultra-conservative", {0.0001, 0.002, 0.012, 0.12, 0.30}},
        {"aggressive", {0.002, 0.02, 0.07, 0.45, 0.80}},
        {"linear", {0.005, 0.05, 0.15, 0.40, 0.70}},
    }};
    return kPresets;
}

}  // namespace

std::span<const SeverityWeightConfig> severity_weight_presets() { return presets(); }

const SeverityWeightConfig* find_severity_preset(std::string_view name) {
    for (const auto& p : presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

ExposureConfig default_exposure_config() {
    ExposureConfig cfg;
    cfg.severity_weights = *find_severity_preset("baseline");
    return cfg;
}

double misconfiguration_exposure(std::span<const Finding> findings, const ExposureConfig& cfg) {
    // Bucket by severity so the survival product runs in a canonical order:
    // the result is bitwise independent of the findings' order.
    std::array<std::size_t, kSeverityCount> counts{};
    for (const Finding& f : findings) {
        ++counts[rank(f.effective_severity(cfg.use_adjusted_severity))];
    }
    double survive = 1.0;
    for (std::size_t r = 0; r < kSeverityCount; ++r) {
        const double keep = 1.0 - cfg.severity_weights.weights[r];
        for (std::size_t i = 0; i < counts[r]; ++i) survive *= keep;
    }
    return cfg.cap * (1.0 - survive);
}

double attack_vector_exposure(std::int64_t path_count, const ExposureConfig& cfg) {
    if (path_count <= 0) return 0.0;
    // -expm1 keeps precision for small p/tau; always in [0, 1).
    return -std::expm1(-static_cast<double>(path_count) / cfg.tau);
}

ExposureBreakdown base_exposure(const Asset& asset, const ExposureConfig& cfg) {
    ExposureBreakdown out;
    out.b_mis = misconfiguration_exposure(asset.findings, cfg);
    out.b_vec = attack_vector_exposure(asset.attack_vectors.path_count, cfg);
    // Ties resolve attack vector > misconfiguration > floor.
    if (out.b_vec >= out.b_mis && out.b_vec >= cfg.floor) {
        out.b_base = out.b_vec;
        out.dominant = ExposureChannel::AttackVector;
    } else if (out.b_mis >= cfg.floor) {
        out.b_base = out.b_mis;
        out.dominant = ExposureChannel::Misconfiguration;
    } else {
        out.b_base = cfg.floor;
        out.dominant = ExposureChannel::Floor;
    }
    return out;
}

}  // namespace assetrank
