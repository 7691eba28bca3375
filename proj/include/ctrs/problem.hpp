#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctrs/conditional.hpp"

namespace ctrs {

/// A COPS-style problem:
///
///     (CONDITIONTYPE ORIENTED)
///     (VAR x y)
///     (RULES
///       f(x) -> pair(x,y) | s(x) == t(y)
///     )
///     (COMMENT free text)
///
/// `==` separates an oriented condition s ->* t. Rules are named r1, r2, ...
struct ProblemFile {
    std::string condition_type;
    std::vector<std::string> variables;
    std::vector<ConditionalRule> rules;
    std::vector<std::string> comments;

    Ctrs ctrs() const { return Ctrs(rules); }
};

ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::string& path);

std::string format_problem(const ProblemFile& p);

}  // namespace ctrs
