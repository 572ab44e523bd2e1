#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assetrank/asset.hpp"

namespace assetrank {

struct ValidationIssue {
    std::string where;    // e.g. "line 12", "asset 'web-01'.findings[2]"
    std::string message;  // what is wrong, with the offending value

    bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    void add(std::string where, std::string message) {
        issues.push_back({std::move(where), std::move(message)});
    }
    std::string to_string() const;
};

// Outcome of validating a snapshot. Acceptance is all-or-nothing: `snapshot`
// is populated (in canonical form, criterion scores attached from the label
// maps) iff the report is clean. Partial acceptance never happens.
struct SnapshotValidation {
    std::optional<Snapshot> snapshot;
    ValidationReport report;

    bool ok() const { return report.ok(); }
};

// Structural validation of a raw snapshot:
//   - asset_id non-empty and unique across the snapshot; vendor/asset_type non-empty
//   - finding_id non-empty and unique within an asset
//   - path_count >= 0; pattern_ids, when non-empty, match path_count exactly
//   - structural raws finite and >= 0; percentiles finite and in [0,1]
//   - criterion assessments: known criterion id, correct family for the list
//     it appears in, at most one assessment per criterion per asset, label in
//     the criterion's label set (or not_applicable), confidence in [0,1]
//   - assessment scores: real labels get the catalog score attached when
//     absent and must equal it exactly when present; not_applicable must not
//     carry a score
ValidationReport validate_snapshot_report(const Snapshot& raw);
SnapshotValidation validate_snapshot(const Snapshot& raw);

}  // namespace assetrank
