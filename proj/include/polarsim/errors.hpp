#pragma once

#include <stdexcept>
#include <string>

namespace polarsim {

// Error taxonomy shared by the file loaders and the experiment runner.
// The CLI maps these onto exit codes: 2 parse, 3 validation, 4 I/O.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polarsim
