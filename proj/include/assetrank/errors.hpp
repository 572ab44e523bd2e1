#pragma once

#include <stdexcept>
#include <string>

namespace assetrank {

// Filesystem-level failures: missing files, unreadable/unwritable paths.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration: rules files, config files, bad parameter values.
// Distinct from data validation, which is reported as values, not thrown.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace assetrank
