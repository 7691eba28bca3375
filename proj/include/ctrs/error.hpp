#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctrs {

enum class ErrorKind {
    invalid_position,
    invalid_rule,
    index_out_of_range,
    invalid_derivation,
    syntax_error,
    undeclared_variable,
    reserved_prefix,
    unsupported_condition_type,
    not_deterministic,
    extra_variable_in_rhs,
    not_normal_1ctrs,
    unsupported_unraveling,
    initial_term_not_original,
    precondition_violated,
    not_almost_u_eager,
    not_right_stable,
    precedence_invalid,
    not_joinable,
    witness_exceeded_bounds,
    internal,
};

/// Kebab-case name used in diagnostics, e.g. "invalid-position".
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    /// True for errors caused by bad user input (as opposed to broken invariants).
    bool is_input_error() const noexcept;

private:
    ErrorKind kind_;
};

}  // namespace ctrs
