#pragma once

#include <stdexcept>
#include <string>

namespace scnplan {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad scenario/config input. CLI maps this to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Inconsistent model inputs (uncovered demand, zero spectral efficiency
// with traffic, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

// Traffic synthesis could not reach the requested Pearson target.
class CalibrationError : public Error {
public:
    CalibrationError(const std::string& msg, double best)
        : Error(msg), best_achieved(best) {}
    double best_achieved;
};

} // namespace scnplan
