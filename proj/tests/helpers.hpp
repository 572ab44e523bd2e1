#pragma once

// Shared builders and randomized-case generators for the test suites. Random
// inputs come from the library's own SplitMix64 so failures reproduce from a
// printed seed; the *computations* under test are checked against independent
// oracles, not against the generator.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "assetrank/asset.hpp"
#include "assetrank/exposure.hpp"
#include "assetrank/generator.hpp"
#include "assetrank/scoring.hpp"

namespace testutil {

using namespace assetrank;

inline Finding mk_finding(std::string id, Severity sev,
                          std::optional<Severity> adjusted = std::nullopt) {
    Finding f;
    f.finding_id = std::move(id);
    f.control_id = "ctl-" + std::string(to_string(sev));
    f.original_severity = sev;
    f.adjusted_severity = adjusted;
    return f;
}

inline Asset mk_asset(std::string id, std::vector<Severity> severities = {},
                      std::int64_t path_count = 0) {
    Asset a;
    a.asset_id = std::move(id);
    a.vendor = "AWS";
    a.asset_type = "object_bucket";
    for (std::size_t i = 0; i < severities.size(); ++i) {
        a.findings.push_back(mk_finding(a.asset_id + "-f" + std::to_string(i), severities[i]));
    }
    a.attack_vectors.path_count = path_count;
    return a;
}

// Assessment with the catalog score attached; label must be valid.
inline CriterionAssessment mk_assessment(std::string_view criterion_id, std::string_view label,
                                         double confidence = 1.0) {
    CriterionAssessment ca;
    ca.criterion_id = std::string(criterion_id);
    ca.label = std::string(label);
    if (ca.label != kNotApplicable) {
        const CriterionSpec* spec = find_criterion(ca.criterion_id);
        ca.score = *label_score(*spec, ca.label);
    }
    ca.confidence = confidence;
    return ca;
}

inline Severity random_severity(SplitMix64& rng) {
    return kAllSeverities[rng.next_below(kSeverityCount)];
}

inline std::vector<Severity> random_severities(SplitMix64& rng, std::size_t max_count) {
    std::vector<Severity> out(rng.next_below(max_count + 1));
    for (auto& s : out) s = random_severity(rng);
    return out;
}

// Random valid weight scheme: five values in [0,1], non-decreasing.
inline SeverityWeightConfig random_weights(SplitMix64& rng) {
    SeverityWeightConfig w;
    w.name = "random";
    double prev = 0.0;
    for (std::size_t i = 0; i < kSeverityCount; ++i) {
        prev = prev + (1.0 - prev) * rng.next_double() * 0.5;
        w.weights[i] = prev;
    }
    return w;
}

inline ExposureConfig random_exposure_config(SplitMix64& rng) {
    ExposureConfig cfg;
    cfg.severity_weights = random_weights(rng);
    cfg.cap = rng.next_double();
    cfg.floor = rng.next_double() * 0.2;
    cfg.tau = 0.25 + 20.0 * rng.next_double();
    return cfg;
}

// Independent misconfiguration oracle: inclusion-exclusion subset expansion
// of the survival product, so it shares no code path with the sequential
// product in the implementation. Only usable for small finding counts.
inline double brute_force_b_mis(const std::vector<double>& weights, double cap) {
    const std::size_t n = weights.size();
    double survive = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double term = 1.0;
        bool negative = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                term *= weights[i];
                negative = !negative;
            }
        }
        survive += negative ? -term : term;
    }
    return cap * (1.0 - survive);
}

}  // namespace testutil
