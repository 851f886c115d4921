#pragma once

#include <stdexcept>
#include <string>

namespace otalg {

/// Invalid configuration or violated parameter invariant; message carries the key path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Statistic is undefined for the given inputs (e.g. zero-variance paired differences).
class StatsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace otalg
