#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace assetrank {

// Finding severity scale. The order is total and load-bearing: weight tables
// are indexed by rank() and must be non-decreasing along it.
enum class Severity : std::uint8_t {
    Info = 0,
    Low = 1,
    Medium = 2,
    High = 3,
    Critical = 4,
};

inline constexpr std::size_t kSeverityCount = 5;

inline constexpr std::array<Severity, kSeverityCount> kAllSeverities = {
    Severity::Info, Severity::Low, Severity::Medium, Severity::High, Severity::Critical,
};

constexpr std::size_t rank(Severity s) noexcept { return static_cast<std::size_t>(s); }

constexpr std::string_view to_string(Severity s) noexcept {
    switch (s) {
        case Severity::Info: return "INFO";
        case Severity::Low: return "LOW";
        case Severity::Medium: return "MEDIUM";
        case Severity::High: return "HIGH";
        case Severity::Critical: return "CRITICAL";
    }
    return "INFO";
}

// Case-sensitive; returns nullopt for anything outside the five canonical names.
std::optional<Severity> parse_severity(std::string_view text);

}  // namespace assetrank
