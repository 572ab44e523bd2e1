#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace assetrank {

// The two context families. Business-function criteria describe what the
// asset is for; data-criticality criteria describe what it holds or moves.
enum class CriterionFamily {
    BusinessFunction,
    DataCriticality,
};

constexpr std::string_view to_string(CriterionFamily f) noexcept {
    return f == CriterionFamily::BusinessFunction ? "business_function" : "data_criticality";
}

// Distinguished label marking a criterion that does not apply to an asset at
// all. Assessments carrying it have no score and are excluded from
// aggregation entirely (they are not zeros).
inline constexpr std::string_view kNotApplicable = "not_applicable";

struct CriterionLabel {
    std::string_view label;
    double score;  // in [0,1]
};

struct CriterionSpec {
    std::string_view id;
    CriterionFamily family;
    std::span<const CriterionLabel> labels;  // ordered weakest -> strongest
};

// Fixed catalog of the eleven criteria and their label->score maps. The maps
// are part of the scoring contract, not tunables; they are exposed read-only
// so tooling can enumerate labels and validation can pin scores exactly.
std::span<const CriterionSpec> criterion_catalog();

// nullptr if the id is not in the catalog.
const CriterionSpec* find_criterion(std::string_view criterion_id);

// Score for a (criterion, label) pair; nullopt for unknown labels and for
// the not-applicable marker.
std::optional<double> label_score(const CriterionSpec& spec, std::string_view label);

// One assessed criterion on an asset. `score` is always populated from the
// label map for real labels and always absent for not_applicable.
struct CriterionAssessment {
    std::string criterion_id;
    std::string label;
    std::optional<double> score;
    double confidence = 1.0;  // in [0,1]

    bool not_applicable() const { return label == kNotApplicable; }
    bool operator==(const CriterionAssessment&) const = default;
};

}  // namespace assetrank
