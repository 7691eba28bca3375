#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctrs/rewrite.hpp"

namespace ctrs {

/// Strict partial order on symbol names, kept transitively closed.
class Precedence {
public:
    bool greater(const std::string& f, const std::string& g) const { return closure_.contains({f, g}); }
    /// Adding f > g keeps the order irreflexive.
    bool can_add(const std::string& f, const std::string& g) const { return f != g && !greater(g, f); }
    /// Returns false (and changes nothing) if f > g would create a cycle.
    bool add(const std::string& f, const std::string& g);

    /// Pairs added explicitly, in insertion order.
    const std::vector<std::pair<std::string, std::string>>& generators() const noexcept { return generators_; }
    const std::set<std::pair<std::string, std::string>>& closure() const noexcept { return closure_; }

private:
    std::vector<std::pair<std::string, std::string>> generators_;
    std::set<std::pair<std::string, std::string>> closure_;
};

/// Builds a precedence from explicit pairs; nullopt if they contain a cycle.
std::optional<Precedence> precedence_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

/// s >_lpo t with lexicographic left-to-right status.
bool lpo_greater(const Term& s, const Term& t, const Precedence& prec);

struct TerminationResult {
    std::optional<Precedence> precedence;
    bool budget_exhausted = false;
    std::size_t checks = 0;
};

/// Searches for a precedence orienting every rule. `budget` bounds the number
/// of goal expansions.
TerminationResult prove_termination_lpo(const Trs& trs, std::size_t budget = 100000);

}  // namespace ctrs
