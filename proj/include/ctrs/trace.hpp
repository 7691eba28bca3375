#pragma once

#include <set>
#include <string>
#include <string_view>

#include "ctrs/rewrite.hpp"

namespace ctrs {

/// Derivation trace text:
///
///     TERM <term>
///     STEP pos=<dotted-position> rule=<rule-name>
///     ...
///
/// Blank lines and lines starting with '#' are ignored on load.
std::string format_trace(const Derivation& d);

/// Loads a trace, recomputing every substitution. Throws syntax-error on
/// malformed lines and invalid-derivation if a step does not re-validate.
Derivation parse_trace(std::string_view text, const Trs& trs, const std::set<std::string>& variables);

}  // namespace ctrs
