#pragma once

#include <iosfwd>
#include <string>

#include "assetrank/rules.hpp"
#include "assetrank/scoring.hpp"
#include "assetrank/validation.hpp"

namespace assetrank {

enum class SnapshotFormat {
    Jsonl,  // canonical: one asset object per line
    Csv,    // flat findings-only projection
};

// Guess from the file extension: .csv -> Csv, everything else Jsonl.
SnapshotFormat format_from_path(const std::string& path);

// Parses and validates. Parse problems (bad JSON, unknown severity, wrong
// types, missing required keys) carry 1-based line/row numbers; structural
// problems come from validate_snapshot. The snapshot is populated only when
// the report is clean. Throws IoError if the file cannot be opened.
SnapshotValidation load_snapshot(const std::string& path,
                                 SnapshotFormat format = SnapshotFormat::Jsonl);
SnapshotValidation parse_snapshot(std::istream& in, const std::string& snapshot_id,
                                  SnapshotFormat format);

// Canonical JSONL serialization: one asset per line, alphabetical keys,
// shortest round-trip number formatting — byte-deterministic for a given
// snapshot. Optional keys are omitted when empty/absent.
std::string snapshot_to_jsonl(const Snapshot& snapshot);
void write_snapshot(const Snapshot& snapshot, const std::string& path);

// One ranked breakdown per line, rank attached; same determinism contract.
std::string breakdowns_to_jsonl(std::span<const ScoreBreakdown> ranked);

// Rules file: JSONL, one rule per line. Malformed rules throw ConfigError
// mentioning the 1-based line number. Throws IoError on unreadable paths.
RuleSet load_rules(const std::string& path);
RuleSet parse_rules(std::istream& in);
std::string rules_to_jsonl(const RuleSet& rules);

// Plain key-value scoring configuration ("key = value", '#' comments).
// Keys mirror the ScoringConfig leaves: severity_weights (preset name or
// five comma-separated values), cap, floor, tau, use_adjusted_severity,
// alpha, confidence_threshold, criterion_weight.<criterion_id>.
// Unknown keys or out-of-range values throw ConfigError. Keys not present
// keep their value from `base`, so overrides can be layered.
ScoringConfig load_scoring_config(const std::string& path);
ScoringConfig parse_scoring_config(std::istream& in);
ScoringConfig parse_scoring_config(std::istream& in, ScoringConfig base);

}  // namespace assetrank
