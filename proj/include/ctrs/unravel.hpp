#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ctrs/conditional.hpp"

namespace ctrs {

enum class Unraveling { seq, opt, sim };

std::string_view to_string(Unraveling u);
Unraveling parse_unraveling(std::string_view text);

struct USymbolInfo {
    std::string symbol;
    std::string rule;
    /// 1-based condition index; always 1 for the simultaneous unraveling.
    std::size_t index = 1;
    /// Frozen variables in argument order, after the conditional arguments.
    std::vector<std::string> frozen;
    /// Number of leading conditional arguments (k for U_sim, 1 otherwise).
    std::size_t conditional_args = 1;

    std::size_t arity() const noexcept { return conditional_args + frozen.size(); }
};

enum class RuleKind { original, introduction, switch_rule, elimination };

std::string_view to_string(RuleKind k);

struct RuleProvenance {
    RuleKind kind = RuleKind::original;
    std::string source_rule;
    /// For a switch rule, the condition it leaves (U_i -> U_{i+1}).
    std::size_t index = 0;
};

struct UnravelingResult {
    Unraveling kind = Unraveling::seq;
    Trs trs;
    std::map<std::string, USymbolInfo> u_symbols;
    std::map<std::string, RuleProvenance> provenance;
    Ctrs source;

    const USymbolInfo* u_symbol(const std::string& name) const;
    const RuleProvenance& provenance_of(const std::string& rule) const;
    /// Every frozen set covers the variables of its rule's left-hand side.
    bool supports_tb() const;
};

UnravelingResult unravel_seq(const Ctrs& ctrs);
UnravelingResult unravel_opt(const Ctrs& ctrs);
/// Requires a normal 1-CTRS.
UnravelingResult unravel_sim(const Ctrs& ctrs);
UnravelingResult unravel(const Ctrs& ctrs, Unraveling kind);

/// Back-translation of a mixed term into an original term.
Term tb(const Term& t, const UnravelingResult& u);
Substitution tb(const Substitution& sigma, const UnravelingResult& u);

enum class MixedTermClass { original, mixed };

MixedTermClass classify_term(const Term& t);

/// Replays a conditional step in U_seq the way the completeness argument does:
/// introduction, condition witnesses inside the conditional argument, switches,
/// elimination. The result validates against `u.trs`.
Derivation simulate_step(const ConditionalStep& step, const UnravelingResult& u);
Derivation simulate_derivation(const ConditionalDerivation& d, const UnravelingResult& u);

/// Length of `simulate_step(step, u)` computed without building it.
std::size_t constructive_length(const ConditionalStep& step);

}  // namespace ctrs
