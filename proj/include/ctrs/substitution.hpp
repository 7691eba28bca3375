#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctrs/term.hpp"

namespace ctrs {

/// Finite mapping from variable names to terms.
class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const std::string, Term>> bindings);

    bool empty() const noexcept { return map_.empty(); }
    std::size_t size() const noexcept { return map_.size(); }
    bool contains(const std::string& var) const { return map_.contains(var); }
    /// Image of `var`; the variable itself if unbound.
    Term get(const std::string& var) const;
    const Term* find(const std::string& var) const;
    void bind(const std::string& var, Term t);
    std::set<std::string> domain() const;
    const std::map<std::string, Term>& bindings() const noexcept { return map_; }

    /// Restriction to the given variables.
    Substitution restrict(const std::vector<std::string>& vars) const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<std::string, Term> map_;
};

/// t·σ
Term apply(const Substitution& sigma, const Term& t);
/// The substitution στ with x(στ) = (xσ)τ.
Substitution compose(const Substitution& sigma, const Substitution& tau);

std::string to_string(const Substitution& sigma);

/// Syntactic matching: σ with pattern·σ = subject and dom(σ) ⊆ Var(pattern).
std::optional<Substitution> match(const Term& pattern, const Term& subject);
/// Matching that extends `sigma`; existing bindings must agree.
std::optional<Substitution> match(const Term& pattern, const Term& subject, Substitution sigma);

/// Idempotent most general unifier; nullopt on clash or occurs-check failure.
std::optional<Substitution> unify(const Term& s, const Term& t);

/// Produces fresh variable names `x#n` from a monotone counter.
class FreshVariables {
public:
    explicit FreshVariables(std::size_t start = 1) : next_(start) {}

    std::string fresh(const std::string& base);
    /// Renames every variable of the terms consistently; returns the renaming.
    Substitution renaming_for(const std::vector<Term>& terms);

private:
    std::size_t next_;
};

/// Base name of a possibly renamed variable (`x#3` -> `x`).
std::string base_name(const std::string& var);

}  // namespace ctrs
