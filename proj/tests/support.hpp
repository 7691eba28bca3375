#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ctrs/conditional.hpp"
#include "ctrs/problem.hpp"
#include "ctrs/rewrite.hpp"

namespace support {

ctrs::ProblemFile fixture_problem(const std::string& name);
ctrs::Ctrs fixture(const std::string& name);

/// Parses with variables x, y, z, w.
ctrs::Term term(std::string_view text);

// Definitional oracles, written against raw paths rather than Position.

bool oracle_innermost(const ctrs::Derivation& d, const ctrs::Trs& trs);
bool oracle_almost_u_eager(const ctrs::Derivation& d);
bool oracle_u_eager(const ctrs::Derivation& d);
bool oracle_lpo_greater(const ctrs::Term& s, const ctrs::Term& t,
                        const std::vector<std::pair<std::string, std::string>>& pairs);

/// Every derivation of length 1..max_len from `start` (depth-first, rule order),
/// stopping once `node_budget` derivations have been produced.
std::vector<ctrs::Derivation> enumerate_derivations(const ctrs::Term& start, const ctrs::Trs& trs,
                                                    std::size_t max_len, std::size_t node_budget);

struct RandomSignature {
    std::vector<ctrs::Symbol> symbols;
};

/// A right-stable DCTRS with at most 4 rules, 2 conditions per rule and 6 symbols.
ctrs::Ctrs random_right_stable_dctrs(std::mt19937& rng);

ctrs::Term random_ground_term(std::mt19937& rng, const std::vector<ctrs::Symbol>& sig, std::size_t max_size);

/// Random walk through innermost successors; stops at a normal form, after
/// `max_len` steps, or when terms outgrow `max_term_size`.
ctrs::Derivation random_innermost_derivation(std::mt19937& rng, const ctrs::Term& start, const ctrs::Trs& trs,
                                             std::size_t max_len, std::size_t max_term_size = 60);

std::vector<ctrs::Symbol> original_symbols(const ctrs::Ctrs& c);

}  // namespace support
