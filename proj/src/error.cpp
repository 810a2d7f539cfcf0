#include "cornerlab/error.hpp"

namespace cornerlab {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::not_over_damped: return "not-over-damped";
    case ErrorKind::out_of_phase: return "out-of-phase";
    case ErrorKind::no_crossing: return "no-crossing";
    case ErrorKind::scale_underflow: return "scale-underflow";
    case ErrorKind::invalid_scale: return "invalid-scale";
    case ErrorKind::invalid_exponent: return "invalid-exponent";
    case ErrorKind::scale_free_run: return "scale-free-run";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::singular_radius: return "singular-radius";
    case ErrorKind::integration_failure: return "integration-failure";
    case ErrorKind::numeric_failure: return "numeric-failure";
    }
    return "unknown";
}

bool is_validation_error(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::singular_radius:
    case ErrorKind::integration_failure:
    case ErrorKind::numeric_failure:
        return false;
    default:
        return true;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

} // namespace cornerlab
