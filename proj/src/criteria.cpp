#include "assetrank/criteria.hpp"

#include <array>

namespace assetrank {
namespace {

// Business-function label maps.
constexpr std::array<CriterionLabel, 4> kFunctionalRole = {{
    {"auxiliary", 0.2},
    {"internal_support", 0.5},
    {"customer_facing_support", 0.8},
    {"core_business_function", 1.0},
}};
constexpr std::array<CriterionLabel, 3> kEnvironment = {{
    {"development", 0.3},
    {"pre_production", 0.6},
    {"production", 1.0},
}};
constexpr std::array<CriterionLabel, 3> kControlRole = {{
    {"single_workload", 0.4},
    {"shared_service", 0.7},
    {"orchestrator", 1.0},
}};
constexpr std::array<CriterionLabel, 3> kExplicitImportance = {{
    {"none", 0.3},
    {"implicit", 0.7},
    {"explicit", 1.0},
}};
constexpr std::array<CriterionLabel, 7> kBlastRadius = {{
    {"internal_operations", 0.4},
    {"shared_platform", 0.6},
    {"customer_data_platform", 0.7},
    {"customer_front_door", 0.8},
    {"system_of_record", 0.9},
    {"identity_control_plane", 1.0},
    {"revenue_flow", 1.0},
}};

// Data-criticality label maps. "unknown" is a real label scoring 0 (it stays
// in the aggregation and dilutes), unlike not_applicable which is excluded.
constexpr std::array<CriterionLabel, 5> kDataType = {{
    {"unknown", 0.0},
    {"low", 0.25},
    {"internal", 0.5},
    {"business_sensitive", 0.75},
    {"regulated_sensitive", 1.0},
}};
constexpr std::array<CriterionLabel, 4> kSystemRole = {{
    {"transient", 0.2},
    {"derived_copy", 0.5},
    {"authoritative_source", 0.8},
    {"system_of_record", 1.0},
}};
constexpr std::array<CriterionLabel, 3> kAccessExposure = {{
    {"restricted", 0.3},
    {"moderate", 0.6},
    {"broad", 1.0},
}};
constexpr std::array<CriterionLabel, 3> kPropagationScope = {{
    {"local", 0.4},
    {"multi_service", 0.7},
    {"cross_domain", 1.0},
}};
constexpr std::array<CriterionLabel, 3> kRegulatoryRelevance = {{
    {"none", 0.2},
    {"moderate", 0.6},
    {"high", 1.0},
}};
constexpr std::array<CriterionLabel, 3> kDataFreshness = {{
    {"archival", 0.3},
    {"periodic", 0.6},
    {"live_operational", 1.0},
}};

constexpr std::array<CriterionSpec, 11> kCatalog = {{
    {"functional_role", CriterionFamily::BusinessFunction, kFunctionalRole},
    {"environment", CriterionFamily::BusinessFunction, kEnvironment},
    {"control_role", CriterionFamily::BusinessFunction, kControlRole},
    {"explicit_business_importance", CriterionFamily::BusinessFunction, kExplicitImportance},
    {"blast_radius_category", CriterionFamily::BusinessFunction, kBlastRadius},
    {"data_type", CriterionFamily::DataCriticality, kDataType},
    {"system_role", CriterionFamily::DataCriticality, kSystemRole},
    {"access_exposure", CriterionFamily::DataCriticality, kAccessExposure},
    {"propagation_scope", CriterionFamily::DataCriticality, kPropagationScope},
    {"regulatory_relevance", CriterionFamily::DataCriticality, kRegulatoryRelevance},
    {"data_freshness", CriterionFamily::DataCriticality, kDataFreshness},
}};

}  // namespace

std::span<const CriterionSpec> criterion_catalog() { return kCatalog; }

const CriterionSpec* find_criterion(std::string_view criterion_id) {
    for (const auto& spec : kCatalog) {
        if (spec.id == criterion_id) return &spec;
    }
    return nullptr;
}

std::optional<double> label_score(const CriterionSpec& spec, std::string_view label) {
    for (const auto& entry : spec.labels) {
        if (entry.label == label) return entry.score;
    }
    return std::nullopt;
}

}  // namespace assetrank
