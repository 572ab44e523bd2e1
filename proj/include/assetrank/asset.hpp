#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "assetrank/criteria.hpp"
#include "assetrank/severity.hpp"

namespace assetrank {

// One failed control on an asset. `adjusted_severity` is only present when a
// downstream adjuster (rule engine, human triage, model) has re-rated the
// finding; the original rating is always retained alongside it.
struct Finding {
    std::string finding_id;
    std::string control_id;
    Severity original_severity = Severity::Info;
    std::optional<Severity> adjusted_severity;

    Severity effective_severity(bool use_adjusted) const {
        return (use_adjusted && adjusted_severity) ? *adjusted_severity : original_severity;
    }
    bool operator==(const Finding&) const = default;
};

// Confirmed attack-path evidence. When pattern ids are recorded they must
// account for every counted path (one id per path).
struct AttackVectorEvidence {
    std::int64_t path_count = 0;
    std::vector<std::string> pattern_ids;

    bool operator==(const AttackVectorEvidence&) const = default;
};

// Structural context signals. Each signal may arrive as a raw magnitude, as
// an already-normalized percentile in [0,1], or both; raw-only signals are
// percentile-normalized against the asset's peer group before scoring.
struct StructuralSignals {
    std::optional<double> anomaly_raw;
    std::optional<double> anomaly_percentile;
    std::optional<double> blast_raw;
    std::optional<double> blast_percentile;

    bool operator==(const StructuralSignals&) const = default;
};

struct Asset {
    std::string asset_id;
    std::string vendor;      // open-world: any non-empty string
    std::string asset_type;  // open-world: any non-empty string
    std::vector<Finding> findings;
    AttackVectorEvidence attack_vectors;
    StructuralSignals structural;
    std::vector<CriterionAssessment> bfc_criteria;
    std::vector<CriterionAssessment> dc_criteria;
    std::map<std::string, std::string> metadata_tags;

    bool operator==(const Asset&) const = default;
};

struct Snapshot {
    std::string snapshot_id;
    std::string created_at;  // opaque timestamp text; empty when unknown
    std::vector<Asset> assets;

    bool operator==(const Snapshot&) const = default;
};

// An asset participates in scoring iff it carries evidence: at least one
// finding or at least one confirmed attack path. Context alone never puts an
// asset in scope.
inline bool in_scope(const Asset& a) {
    return !a.findings.empty() || a.attack_vectors.path_count >= 1;
}

}  // namespace assetrank
