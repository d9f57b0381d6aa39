#pragma once

#include <stdexcept>
#include <string>

namespace fracfd {

/// Invalid parameters, unknown catalog names, malformed study configurations.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: singular assembly, Krylov stagnation, degenerate correction.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracfd
