#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctrs/position.hpp"
#include "ctrs/substitution.hpp"
#include "ctrs/term.hpp"

namespace ctrs {

struct Rule {
    std::string name;
    Term lhs;
    Term rhs;

    friend bool operator==(const Rule&, const Rule&) = default;
};

std::string to_string(const Rule& rule);

/// Unconditional TRS. Every rule satisfies the variable condition and has a
/// non-variable left-hand side (checked on construction).
class Trs {
public:
    Trs() = default;
    explicit Trs(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const std::set<Symbol>& signature() const noexcept { return signature_; }
    const Rule* find(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;
    bool empty() const noexcept { return rules_.empty(); }

private:
    std::vector<Rule> rules_;
    std::set<Symbol> signature_;
    std::map<std::string, std::size_t> index_;
};

struct Redex {
    Position position;
    std::size_t rule_index = 0;
    Substitution sigma;
};

struct Step {
    Term source;
    Term target;
    Position position;
    Rule rule;
    Substitution sigma;
};

struct Derivation {
    Term initial;
    std::vector<Step> steps;

    explicit Derivation(Term start) : initial(std::move(start)) {}
    Derivation(Term start, std::vector<Step> s) : initial(std::move(start)), steps(std::move(s)) {}

    std::size_t length() const noexcept { return steps.size(); }
    const Term& final_term() const noexcept { return steps.empty() ? initial : steps.back().target; }
    /// u_i for i in [0, length()].
    const Term& term_at(std::size_t i) const;
    void append(Step step);
    void append(const Derivation& other);
};

enum class Strategy { full, innermost };

/// Redex triples in leftmost-outermost position order, then rule index.
std::vector<Redex> redexes(const Term& t, const Trs& trs);
bool is_normal_form(const Term& t, const Trs& trs);
/// True if some rule matches strictly below `p` in `t`.
bool has_redex_below(const Term& t, const Position& p, const Trs& trs);

Step make_step(const Term& t, const Redex& redex, const Trs& trs);
/// Step at `p` with the named rule; throws invalid-derivation if it does not apply.
Step apply_rule_at(const Term& t, const Position& p, const Rule& rule);

std::vector<Step> all_successors(const Term& t, const Trs& trs);
std::vector<Step> innermost_successors(const Term& t, const Trs& trs);
std::vector<Step> successors(const Term& t, const Trs& trs, Strategy strategy);

/// Re-checks the step invariant: source|_p = lσ and target = source[rσ]_p.
bool is_valid_step(const Step& step);
/// Checks that every step is valid, uses a rule of `trs`, and steps are consecutive.
bool is_valid_derivation(const Derivation& d, const Trs& trs);
/// Throws invalid-derivation with the first failing step.
void validate_derivation(const Derivation& d, const Trs& trs);

struct SearchBudget {
    std::size_t max_nodes = 10000;
    /// 0 means unbounded.
    std::size_t max_term_size = 0;
};

/// Breadth-first exploration of the terms reachable from a root term.
class ReductionGraph {
public:
    const Term& root() const noexcept { return root_; }
    /// Reached terms in discovery order (the root first).
    const std::vector<Term>& nodes() const noexcept { return order_; }
    /// True if the budget cut the exploration short.
    bool exhausted() const noexcept { return exhausted_; }
    bool contains(const Term& t) const { return parent_.contains(t); }
    /// Irreducible reached terms, sorted.
    std::vector<Term> normal_forms() const;
    /// Shortest derivation from the root to a reached term.
    Derivation derivation_to(const Term& t) const;

private:
    friend ReductionGraph explore(const Term&, const Trs&, const SearchBudget&, Strategy);
    Term root_ = Term::var("_");
    std::vector<Term> order_;
    std::unordered_map<Term, std::optional<Step>, TermHash> parent_;
    std::vector<Term> normal_forms_;
    bool exhausted_ = false;
};

ReductionGraph explore(const Term& t, const Trs& trs, const SearchBudget& budget,
                       Strategy strategy = Strategy::full);

struct NormalFormResult {
    std::vector<Term> normal_forms;
    /// false means every reachable normal form is listed.
    bool exhausted = false;
    /// Retains the search so witnesses can be recovered.
    std::shared_ptr<const ReductionGraph> graph;

    Derivation witness(const Term& nf) const { return graph->derivation_to(nf); }
};

NormalFormResult normal_forms(const Term& t, const Trs& trs, const SearchBudget& budget,
                              Strategy strategy = Strategy::full);

/// Leftmost normalization under the strategy (leftmost-innermost or
/// leftmost-outermost). Stops after `max_steps` steps.
Derivation normalize(const Term& t, const Trs& trs, Strategy strategy, std::size_t max_steps);

/// Descendants of `q` in the target of `step` (includes the contracted position itself).
std::set<Position> one_step_descendants(const Position& q, const Step& step);
/// Descendants of `q` from term index `from` to term index `to` of `d`.
std::set<Position> descendants(const Position& q, const Derivation& d, std::size_t from, std::size_t to);

}  // namespace ctrs
