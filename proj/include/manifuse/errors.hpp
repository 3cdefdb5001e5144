#pragma once

#include <stdexcept>
#include <string>

namespace manifuse {

// Error hierarchy. The CLI maps these to process exit codes:
// invalid_config -> 2, invalid_input -> 3, numerical_failure (and
// its degenerate_* subtypes) -> 4.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class invalid_input_error : public error {
public:
    explicit invalid_input_error(const std::string& msg) : error(msg) {}
};

class invalid_config_error : public error {
public:
    explicit invalid_config_error(const std::string& msg) : error(msg) {}
};

class numerical_failure_error : public error {
public:
    explicit numerical_failure_error(const std::string& msg, double residual = 0.0)
        : error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// All off-diagonal distances are zero; no kernel scale can be derived.
class degenerate_scale_error : public numerical_failure_error {
public:
    explicit degenerate_scale_error(const std::string& msg)
        : numerical_failure_error(msg) {}
};

// A stationary distribution entry underflowed to (numerically) zero.
class degenerate_distribution_error : public numerical_failure_error {
public:
    explicit degenerate_distribution_error(const std::string& msg)
        : numerical_failure_error(msg) {}
};

class io_error : public invalid_input_error {
public:
    explicit io_error(const std::string& msg) : invalid_input_error(msg) {}
};

} // namespace manifuse
