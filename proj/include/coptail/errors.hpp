#ifndef COPTAIL_ERRORS_HPP
#define COPTAIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coptail {

// Base for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument values: bad dimensions, non-PD matrices, negative rates,
// out-of-range quantiles. CLI maps these to exit code 2.
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

// Malformed input files (JSON/CSV). Also exit code 2.
class parse_error : public validation_error {
public:
    explicit parse_error(const std::string& msg) : validation_error(msg) {}
};

// The requested accuracy cannot be met with available working precision.
// CLI maps these to exit code 3.
class precision_error : public error {
public:
    explicit precision_error(const std::string& msg) : error(msg) {}
};

// Numeric failure: solver did not converge, integration budget exhausted
// without meeting the error target, and similar. Exit code 3.
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& msg) : error(msg) {}
};

} // namespace coptail

#endif
