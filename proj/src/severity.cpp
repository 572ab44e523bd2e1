#include "assetrank/severity.hpp"

namespace assetrank {

std::optional<Severity> parse_severity(std::string_view text) {
    for (Severity s : kAllSeverities) {
        if (text == to_string(s)) return s;
    }
    return std::nullopt;
}

}  // namespace assetrank
