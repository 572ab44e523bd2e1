#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "assetrank/asset.hpp"
#include "assetrank/severity.hpp"

namespace assetrank {

// Deterministic PRNG with a stable, documented algorithm identity:
// splitmix64 (Steele/Lea/Flood 2014). Same seed -> same stream on every
// platform and in every future version; std engines are deliberately not
// used because their distributions are not bit-portable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1): 53 high bits scaled by 2^-53.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n) by rejection; n must be > 0.
    std::uint64_t next_below(std::uint64_t n);

private:
    std::uint64_t state_;
};

struct MixEntry {
    std::string name;
    double share;  // in (0,1]
};

struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::size_t asset_count = 0;
    std::vector<MixEntry> vendor_mix;  // shares sum to 1 (1e-9 tolerance)
    std::vector<MixEntry> domain_mix;  // shares sum to 1
    double finding_rate = 0.299;       // share of assets with >= 1 finding
    double attack_vector_rate = 8.0 / 131625.0;
    std::vector<std::pair<Severity, double>> severity_mix;  // shares sum to 1
    double context_coverage = 0.5;     // share of assets given criterion context
    double mean_findings = 3.0;        // geometric mean findings per affected asset
    std::int64_t path_count_min = 1;   // attack-path count support
    std::int64_t path_count_max = 3;
};

// Defaults mirror the published corpus shape: the vendor and domain mixes,
// the 0.299 finding rate and the 8/131625 attack-vector rate.
GeneratorConfig default_generator_config();

// Synthesizes a snapshot with the configured shape. Counts per vendor /
// domain / severity and the finding and attack-vector populations are
// apportioned by largest remainder and assigned via a seeded shuffle, so
// realized shares track targets to within 1/asset_count while remaining
// fully seed-deterministic (same config -> bitwise-identical snapshot).
// Every generated snapshot passes validate_snapshot. Invalid mixes (shares
// not summing to 1, negative rates, zero weights) throw ConfigError.
Snapshot generate_snapshot(const GeneratorConfig& cfg);

}  // namespace assetrank
