#pragma once

#include <stdexcept>
#include <string>

namespace resdac {

// Bad or inconsistent run configuration (missing signal, unmapped
// per-neighbor target, invalid topology fed to run, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite honest data encountered mid-run (malformed tabulated signal).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A protocol assumption was violated at runtime (e.g. an ordinary agent
// with no trusted neighbour reached the filter step).
class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace resdac
