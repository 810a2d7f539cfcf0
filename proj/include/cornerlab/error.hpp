#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cornerlab {

enum class ErrorKind {
    invalid_input,
    not_over_damped,
    out_of_phase,
    no_crossing,
    scale_underflow,
    invalid_scale,
    invalid_exponent,
    scale_free_run,
    parse_error,
    invalid_config,
    singular_radius,
    integration_failure,
    numeric_failure,
};

std::string_view to_string(ErrorKind kind);

// Validation errors are caused by bad input; the rest are numeric failures.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cornerlab
