#pragma once

#include <string>
#include <vector>

#include "ctrs/rewrite.hpp"

namespace ctrs {

struct CriticalPair {
    Term peak;
    /// Result of the outer rule at the root.
    Term left;
    /// Result of the inner rule at `position`.
    Term right;
    std::string outer_rule;
    std::string inner_rule;
    Position position;
    bool trivial = false;

    friend bool operator==(const CriticalPair&, const CriticalPair&) = default;
};

/// Overlaps of renamed-apart rules at non-variable positions of the outer
/// left-hand side. Root overlaps are listed once per unordered pair of distinct
/// rules and never for a rule with itself. Variables are renamed `x#n` with a
/// counter restarted per overlap, so the output is reproducible.
std::vector<CriticalPair> critical_pairs(const Trs& trs);

std::string to_string(const CriticalPair& cp);

}  // namespace ctrs
