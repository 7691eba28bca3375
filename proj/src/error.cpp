#include "ctrs/error.hpp"

namespace ctrs {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_position: return "invalid-position";
    case ErrorKind::invalid_rule: return "invalid-rule";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::invalid_derivation: return "invalid-derivation";
    case ErrorKind::syntax_error: return "syntax-error";
    case ErrorKind::undeclared_variable: return "undeclared-variable";
    case ErrorKind::reserved_prefix: return "reserved-prefix";
    case ErrorKind::unsupported_condition_type: return "unsupported-condition-type";
    case ErrorKind::not_deterministic: return "not-deterministic";
    case ErrorKind::extra_variable_in_rhs: return "extra-variable-in-rhs";
    case ErrorKind::not_normal_1ctrs: return "not-normal-1ctrs";
    case ErrorKind::unsupported_unraveling: return "unsupported-unraveling";
    case ErrorKind::initial_term_not_original: return "initial-term-not-original";
    case ErrorKind::precondition_violated: return "precondition-violated";
    case ErrorKind::not_almost_u_eager: return "not-almost-u-eager";
    case ErrorKind::not_right_stable: return "not-right-stable";
    case ErrorKind::precedence_invalid: return "precedence-invalid";
    case ErrorKind::not_joinable: return "not-joinable";
    case ErrorKind::witness_exceeded_bounds: return "witness-construction-exceeded-bounds";
    case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

bool Error::is_input_error() const noexcept {
    return kind_ != ErrorKind::internal;
}

}  // namespace ctrs
