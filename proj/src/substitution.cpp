#include "ctrs/substitution.hpp"

#include <sstream>

namespace ctrs {

Substitution::Substitution(std::initializer_list<std::pair<const std::string, Term>> bindings)
    : map_(bindings) {}

Term Substitution::get(const std::string& var) const {
    auto it = map_.find(var);
    return it == map_.end() ? Term::var(var) : it->second;
}

const Term* Substitution::find(const std::string& var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term t) { map_.insert_or_assign(var, std::move(t)); }

std::set<std::string> Substitution::domain() const {
    std::set<std::string> out;
    for (const auto& [v, _] : map_) out.insert(v);
    return out;
}

Substitution Substitution::restrict(const std::vector<std::string>& vars) const {
    Substitution out;
    for (const auto& v : vars) {
        if (const Term* t = find(v)) out.bind(v, *t);
    }
    return out;
}

Term apply(const Substitution& sigma, const Term& t) {
    if (t.is_ground() || sigma.empty()) return t;
    if (t.is_var()) return sigma.get(t.name());
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(apply(sigma, a));
        changed = changed || !args.back().same_node(a);
    }
    if (!changed) return t;
    return Term::app(t.name(), std::move(args));
}

Substitution compose(const Substitution& sigma, const Substitution& tau) {
    Substitution out;
    for (const auto& [v, t] : sigma.bindings()) {
        Term image = apply(tau, t);
        if (!(image.is_var() && image.name() == v)) out.bind(v, std::move(image));
    }
    for (const auto& [v, t] : tau.bindings()) {
        if (!sigma.contains(v)) out.bind(v, t);
    }
    return out;
}

std::string to_string(const Substitution& sigma) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [v, t] : sigma.bindings()) {
        if (!first) os << ", ";
        first = false;
        os << v << " -> " << t;
    }
    os << '}';
    return os.str();
}

namespace {

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
    if (pattern.is_var()) {
        if (const Term* bound = sigma.find(pattern.name())) return *bound == subject;
        sigma.bind(pattern.name(), subject);
        return true;
    }
    if (subject.is_var() || pattern.name() != subject.name() || pattern.arity() != subject.arity()) {
        return false;
    }
    if (pattern.is_ground()) return pattern == subject;
    for (std::size_t i = 0; i < pattern.arity(); ++i) {
        if (!match_into(pattern.args()[i], subject.args()[i], sigma)) return false;
    }
    return true;
}

// Triangular-form unification; the result is resolved to idempotent form at the end.
Term walk(const Term& t, const Substitution& sigma) {
    Term cur = t;
    while (cur.is_var()) {
        const Term* next = sigma.find(cur.name());
        if (!next) break;
        cur = *next;
    }
    return cur;
}

bool occurs_walk(const std::string& var, const Term& t, const Substitution& sigma) {
    Term w = walk(t, sigma);
    if (w.is_var()) return w.name() == var;
    for (const auto& a : w.args()) {
        if (occurs_walk(var, a, sigma)) return true;
    }
    return false;
}

bool unify_into(const Term& s, const Term& t, Substitution& sigma) {
    Term a = walk(s, sigma);
    Term b = walk(t, sigma);
    if (a.is_var() && b.is_var() && a.name() == b.name()) return true;
    if (a.is_var()) {
        if (occurs_walk(a.name(), b, sigma)) return false;
        sigma.bind(a.name(), b);
        return true;
    }
    if (b.is_var()) return unify_into(b, a, sigma);
    if (a.name() != b.name() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!unify_into(a.args()[i], b.args()[i], sigma)) return false;
    }
    return true;
}

Term resolve(const Term& t, const Substitution& sigma) {
    if (t.is_ground()) return t;
    Term w = walk(t, sigma);
    if (w.is_var()) return w;
    std::vector<Term> args;
    args.reserve(w.arity());
    for (const auto& a : w.args()) args.push_back(resolve(a, sigma));
    return Term::app(w.name(), std::move(args));
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    return match(pattern, subject, Substitution());
}

std::optional<Substitution> match(const Term& pattern, const Term& subject, Substitution sigma) {
    if (!match_into(pattern, subject, sigma)) return std::nullopt;
    return sigma;
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
    Substitution triangular;
    if (!unify_into(s, t, triangular)) return std::nullopt;
    Substitution out;
    for (const auto& [v, image] : triangular.bindings()) out.bind(v, resolve(image, triangular));
    return out;
}

std::string FreshVariables::fresh(const std::string& base) {
    return base_name(base) + "#" + std::to_string(next_++);
}

Substitution FreshVariables::renaming_for(const std::vector<Term>& terms) {
    std::vector<std::string> vars;
    for (const auto& t : terms) collect_variables(t, vars);
    Substitution out;
    for (const auto& v : vars) out.bind(v, Term::var(fresh(v)));
    return out;
}

std::string base_name(const std::string& var) {
    auto hash = var.find('#');
    return hash == std::string::npos ? var : var.substr(0, hash);
}

}  // namespace ctrs
