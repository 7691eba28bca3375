#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctrs/rewrite.hpp"

namespace ctrs {

/// Oriented condition s ->* t.
struct Condition {
    Term source;
    Term target;

    friend bool operator==(const Condition&, const Condition&) = default;
};

struct ConditionalRule {
    std::string name;
    Term lhs;
    Term rhs;
    std::vector<Condition> conditions;

    bool is_unconditional() const noexcept { return conditions.empty(); }
    Rule underlying() const { return Rule{name, lhs, rhs}; }

    friend bool operator==(const ConditionalRule&, const ConditionalRule&) = default;
};

std::string to_string(const ConditionalRule& rule);

class Ctrs {
public:
    Ctrs() = default;
    explicit Ctrs(std::vector<ConditionalRule> rules);

    const std::vector<ConditionalRule>& rules() const noexcept { return rules_; }
    const std::set<Symbol>& signature() const noexcept { return signature_; }
    const ConditionalRule* find(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;

    /// l -> r for every rule, conditions dropped. Extra variables are allowed here.
    std::vector<Rule> underlying_rules() const;
    /// No left-hand side of the underlying TRS matches any subterm of `t`.
    bool irreducible_underlying(const Term& t) const;
    /// Symbols that are not the root of any left-hand side.
    std::set<std::string> constructors() const;
    bool is_unconditional() const;

private:
    std::vector<ConditionalRule> rules_;
    std::set<Symbol> signature_;
    std::map<std::string, std::size_t> index_;
};

struct RuleClassification {
    std::string rule;
    bool type1 = false;
    bool type3 = false;
    bool deterministic = false;
    bool normal = false;
    bool right_stable = false;
};

struct Classification {
    std::vector<RuleClassification> rules;
    bool dctrs = false;
    bool right_stable = false;
    bool normal_1ctrs = false;
    /// Constructors used by the right-stability test.
    std::set<std::string> constructors;
};

Classification classify(const Ctrs& ctrs);
std::string format_classification(const Classification& c);

struct ConditionalBounds {
    std::size_t max_depth = 10;
    /// Node budget of each reachability search.
    std::size_t search_budget = 10000;
    /// Cap on the work of one rewriter over all nested searches: one unit per
    /// term expansion plus one per witness step copied. Nested condition
    /// searches multiply, so per-search budgets alone bound neither time nor
    /// memory. 0 means unlimited.
    std::size_t total_budget = 200000;
};

struct ConditionalDerivation;

/// A rewrite step of the CTRS together with the derivations that satisfy its
/// conditions. `depth` is the stratification level certified by the witnesses.
struct ConditionalStep {
    Term source;
    Term target;
    Position position;
    ConditionalRule rule;
    Substitution sigma;
    std::size_t depth = 1;
    std::vector<ConditionalDerivation> condition_witnesses;
};

struct ConditionalDerivation {
    Term initial;
    std::vector<ConditionalStep> steps;

    explicit ConditionalDerivation(Term start) : initial(std::move(start)) {}

    std::size_t length() const noexcept { return steps.size(); }
    const Term& final_term() const noexcept { return steps.empty() ? initial : steps.back().target; }
    /// Largest step depth, 0 for the empty derivation.
    std::size_t max_depth() const noexcept;
    /// Steps including those inside condition witnesses.
    std::size_t total_steps() const noexcept;
    void append(ConditionalStep step);
    void append(const ConditionalDerivation& other);
};

/// Replays a step: matching, replacement, and every condition witness at depth - 1.
bool is_valid_conditional_step(const ConditionalStep& step, const Ctrs& ctrs, std::string* problem = nullptr);
bool is_valid_conditional_derivation(const ConditionalDerivation& d, const Ctrs& ctrs,
                                     std::string* problem = nullptr);
void validate_conditional_derivation(const ConditionalDerivation& d, const Ctrs& ctrs);

std::string format_conditional_derivation(const ConditionalDerivation& d);

enum class Decision { yes, no, unknown };
std::string_view to_string(Decision d);

struct ConditionalStepSet {
    std::vector<ConditionalStep> steps;
    /// True if a search hit its budget or the depth bound.
    bool exhausted = false;
};

struct ReachResult {
    Decision answer = Decision::unknown;
    std::optional<ConditionalDerivation> witness;
};

struct JoinResult {
    Decision answer = Decision::unknown;
    std::optional<Term> common_reduct;
    std::optional<ConditionalDerivation> left;
    std::optional<ConditionalDerivation> right;
};

/// Depth-stratified conditional rewriting with bounded condition search.
/// Steps at level n evaluate conditions by reachability in level n - 1; level 0
/// has no steps. Results are memoized per instance.
class ConditionalRewriter {
public:
    /// Throws not-deterministic unless `ctrs` is a DCTRS.
    ConditionalRewriter(const Ctrs& ctrs, ConditionalBounds bounds);

    const Ctrs& ctrs() const noexcept { return ctrs_; }
    const ConditionalBounds& bounds() const noexcept { return bounds_; }

    /// All steps up to max_depth, each carrying witnesses of minimal depth.
    ConditionalStepSet successors(const Term& t);
    ReachResult reachable(const Term& from, const Term& to);
    JoinResult joinable(const Term& u, const Term& v);

    struct Reach {
        std::vector<Term> nodes;
        std::unordered_map<Term, std::optional<ConditionalStep>, TermHash> parent;
        /// Search space fully explored (no budget or depth cut anywhere below).
        bool complete = true;

        ConditionalDerivation derivation_to(const Term& t) const;
    };

    /// Terms reachable from `t` using steps of depth <= level.
    const Reach& reach(const Term& t, std::size_t level);

private:
    struct Steps {
        std::vector<ConditionalStep> steps;
        bool complete = true;
    };

    const Steps& steps_at(const Term& t, std::size_t level);
    bool spend(std::size_t units);

    Ctrs ctrs_;
    ConditionalBounds bounds_;
    std::size_t spent_ = 0;
    std::vector<std::unordered_map<Term, std::unique_ptr<Steps>, TermHash>> step_cache_;
    std::vector<std::unordered_map<Term, std::unique_ptr<Reach>, TermHash>> reach_cache_;
};

ConditionalStepSet conditional_successors(const Term& t, const Ctrs& ctrs, const ConditionalBounds& bounds);
ReachResult reachable(const Term& u, const Term& v, const Ctrs& ctrs, const ConditionalBounds& bounds);
JoinResult joinable_ctrs(const Term& u, const Term& v, const Ctrs& ctrs, const ConditionalBounds& bounds);

}  // namespace ctrs
