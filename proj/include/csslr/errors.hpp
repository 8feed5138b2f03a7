#pragma once

#include <stdexcept>
#include <string>

namespace csslr {

// Invalid user input: malformed files, bad configuration values, dataset
// invariant violations. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure during estimation (singular systems etc.).
// Maps to CLI exit code 3.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace csslr
