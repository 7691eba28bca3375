#include "support.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace support {

using namespace ctrs;

ProblemFile fixture_problem(const std::string& name) {
    return load_problem(std::string(CTRS_DATA_DIR) + "/" + name + ".ctrs");
}

Ctrs fixture(const std::string& name) { return fixture_problem(name).ctrs(); }

Term term(std::string_view text) { return parse_term(text, {"x", "y", "z", "w"}); }

namespace {

using Path = std::vector<std::size_t>;

bool is_prefix(const Path& a, const Path& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void all_paths(const Term& t, Path& cur, std::vector<std::pair<Path, Term>>& out) {
    out.emplace_back(cur, t);
    if (t.is_var()) return;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        cur.push_back(i + 1);
        all_paths(t.arg(i), cur, out);
        cur.pop_back();
    }
}

std::vector<std::pair<Path, Term>> all_paths(const Term& t) {
    std::vector<std::pair<Path, Term>> out;
    Path cur;
    all_paths(t, cur, out);
    return out;
}

bool is_u_rooted(const Term& t) { return t.is_app() && t.name().rfind("U_", 0) == 0; }

}  // namespace

bool oracle_innermost(const Derivation& d, const Trs& trs) {
    for (const auto& s : d.steps) {
        const Path& p = s.position.path();
        for (const auto& [q, sub] : all_paths(s.source)) {
            if (q.size() <= p.size() || !is_prefix(p, q)) continue;
            for (const auto& r : trs.rules()) {
                if (match(r.lhs, sub)) return false;
            }
        }
    }
    return true;
}

bool oracle_almost_u_eager(const Derivation& d) {
    for (std::size_t i = 1; i < d.steps.size(); ++i) {
        const Path& p = d.steps[i].position.path();
        const Path& prev = d.steps[i - 1].position.path();
        for (const auto& [q, sub] : all_paths(d.steps[i].source)) {
            if (is_u_rooted(sub) && is_prefix(q, p) && !is_prefix(q, prev)) return false;
        }
    }
    return true;
}

bool oracle_u_eager(const Derivation& d) {
    for (const auto& s : d.steps) {
        for (const auto& [q, sub] : all_paths(s.source)) {
            if (is_u_rooted(sub) && !is_prefix(q, s.position.path())) return false;
        }
    }
    return true;
}

namespace {

bool prec_greater(const std::string& f, const std::string& g,
                  const std::vector<std::pair<std::string, std::string>>& pairs) {
    // Reachability in the pair graph.
    std::set<std::string> seen{f};
    std::vector<std::string> todo{f};
    while (!todo.empty()) {
        std::string a = todo.back();
        todo.pop_back();
        for (const auto& [x, y] : pairs) {
            if (x != a) continue;
            if (y == g) return true;
            if (seen.insert(y).second) todo.push_back(y);
        }
    }
    return false;
}

}  // namespace

// s >lpo t  iff  s = f(ss) and one of
//   some s_i >=lpo t;
//   t = g(ts), f > g, s >lpo every t_j;
//   t = f(ts), ss >lex ts, s >lpo every t_j.
// t a variable: t occurs properly in s.
bool oracle_lpo_greater(const Term& s, const Term& t, const std::vector<std::pair<std::string, std::string>>& pairs) {
    if (s.is_var()) return false;
    if (t.is_var()) {
        for (const auto& [q, sub] : all_paths(s)) {
            if (!q.empty() && sub == t) return true;
        }
        return false;
    }
    for (const auto& si : s.args()) {
        if (si == t || oracle_lpo_greater(si, t, pairs)) return true;
    }
    bool all = true;
    for (const auto& tj : t.args()) all = all && oracle_lpo_greater(s, tj, pairs);
    if (!all) return false;
    if (s.name() != t.name()) return prec_greater(s.name(), t.name(), pairs);
    for (std::size_t i = 0; i < std::min(s.arity(), t.arity()); ++i) {
        if (s.arg(i) == t.arg(i)) continue;
        return oracle_lpo_greater(s.arg(i), t.arg(i), pairs);
    }
    return false;
}

namespace {

void enumerate(Derivation& cur, const Trs& trs, std::size_t max_len, std::size_t budget, std::vector<Derivation>& out) {
    if (cur.length() >= max_len) return;
    for (auto& s : all_successors(cur.final_term(), trs)) {
        if (out.size() >= budget) return;
        cur.steps.push_back(std::move(s));
        out.push_back(cur);
        enumerate(cur, trs, max_len, budget, out);
        cur.steps.pop_back();
    }
}

}  // namespace

std::vector<Derivation> enumerate_derivations(const Term& start, const Trs& trs, std::size_t max_len,
                                              std::size_t node_budget) {
    std::vector<Derivation> out;
    Derivation cur(start);
    enumerate(cur, trs, max_len, node_budget, out);
    return out;
}

namespace {

std::size_t pick(std::mt19937& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Term random_term(std::mt19937& rng, const std::vector<Symbol>& sig, const std::vector<std::string>& vars,
                 std::size_t budget, double var_bias) {
    if (!vars.empty() && coin(rng, var_bias)) return Term::var(vars[pick(rng, vars.size())]);
    std::vector<Symbol> fitting;
    for (const auto& s : sig) {
        if (s.arity + 1 <= budget) fitting.push_back(s);
    }
    if (fitting.empty()) {
        for (const auto& s : sig) {
            if (s.arity == 0) fitting.push_back(s);
        }
    }
    const Symbol& f = fitting[pick(rng, fitting.size())];
    std::vector<Term> args;
    std::size_t left = budget > 1 ? budget - 1 : 0;
    for (std::size_t i = 0; i < f.arity; ++i) {
        std::size_t share = std::max<std::size_t>(1, left / (f.arity - i));
        Term a = random_term(rng, sig, vars, share, var_bias);
        left = left > a.size() ? left - a.size() : 0;
        args.push_back(std::move(a));
    }
    return Term::app(f.name, std::move(args));
}

Term fresh_linear(std::mt19937& rng, const std::vector<Symbol>& sig, std::vector<std::string>& fresh_pool,
                  std::size_t budget) {
    if (!fresh_pool.empty() && coin(rng, 0.5)) {
        std::string v = fresh_pool.back();
        fresh_pool.pop_back();
        return Term::var(v);
    }
    std::vector<Symbol> fitting;
    for (const auto& s : sig) {
        if (s.arity + 1 <= budget && s.arity <= fresh_pool.size() + 1) fitting.push_back(s);
    }
    if (fitting.empty()) {
        for (const auto& s : sig) {
            if (s.arity == 0) fitting.push_back(s);
        }
    }
    const Symbol& f = fitting[pick(rng, fitting.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < f.arity; ++i) args.push_back(fresh_linear(rng, sig, fresh_pool, 2));
    return Term::app(f.name, std::move(args));
}

std::vector<Symbol> random_signature(std::mt19937& rng) {
    const char* functions[] = {"f", "g", "h"};
    const char* constants[] = {"a", "b", "c"};
    std::vector<Symbol> sig;
    std::size_t nf = 1 + pick(rng, 3);
    std::size_t nc = 2 + pick(rng, 2);
    for (std::size_t i = 0; i < nf; ++i) sig.push_back(Symbol{functions[i], 1 + pick(rng, 2), SymbolKind::original});
    for (std::size_t i = 0; i < nc; ++i) sig.push_back(Symbol{constants[i], 0, SymbolKind::original});
    return sig;
}

std::optional<Ctrs> attempt(std::mt19937& rng) {
    auto sig = random_signature(rng);
    const std::vector<std::string> vars{"x", "y"};
    std::size_t n = 1 + pick(rng, 4);
    std::vector<ConditionalRule> rules;
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::string> lv = {vars[pick(rng, vars.size())]};
        if (coin(rng, 0.4)) lv.push_back(vars[pick(rng, vars.size())]);
        Term lhs = random_term(rng, sig, lv, 2 + pick(rng, 3), 0.35);
        if (lhs.is_var()) lhs = Term::app(sig.front().name, std::vector<Term>(sig.front().arity, lhs));
        std::vector<std::string> bound = variables(lhs);
        std::vector<Condition> conds;
        std::size_t k = coin(rng, 0.6) ? 1 + pick(rng, 2) : 0;
        std::vector<std::string> pool{"z", "w"};
        for (std::size_t i = 0; i < k; ++i) {
            Term s = random_term(rng, sig, bound, 1 + pick(rng, 3), 0.5);
            Term t = coin(rng, 0.5) ? random_term(rng, sig, {}, 1 + pick(rng, 2), 0.0)
                                    : fresh_linear(rng, sig, pool, 1 + pick(rng, 3));
            for (const auto& v : variables(t)) bound.push_back(v);
            conds.push_back({std::move(s), std::move(t)});
        }
        Term rhs = random_term(rng, sig, bound, 1 + pick(rng, 4), 0.4);
        rules.push_back(ConditionalRule{"r" + std::to_string(r + 1), lhs, rhs, std::move(conds)});
    }
    try {
        Ctrs c(rules);
        Classification cl = classify(c);
        if (!cl.dctrs || !cl.right_stable) return std::nullopt;
        for (const auto& r : c.rules()) {
            if (!r.is_unconditional()) return c;
        }
        return std::nullopt;  // want at least one conditional rule
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

Ctrs random_right_stable_dctrs(std::mt19937& rng) {
    for (;;) {
        if (auto c = attempt(rng)) return *c;
    }
}

Term random_ground_term(std::mt19937& rng, const std::vector<Symbol>& sig, std::size_t max_size) {
    return random_term(rng, sig, {}, 1 + pick(rng, max_size), 0.0);
}

Derivation random_innermost_derivation(std::mt19937& rng, const Term& start, const Trs& trs, std::size_t max_len,
                                       std::size_t max_term_size) {
    Derivation d(start);
    for (std::size_t i = 0; i < max_len; ++i) {
        auto next = innermost_successors(d.final_term(), trs);
        std::erase_if(next, [&](const Step& s) { return s.target.size() > max_term_size; });
        if (next.empty()) break;
        d.append(next[pick(rng, next.size())]);
    }
    return d;
}

std::vector<Symbol> original_symbols(const Ctrs& c) {
    std::vector<Symbol> out(c.signature().begin(), c.signature().end());
    bool has_constant = std::any_of(out.begin(), out.end(), [](const Symbol& s) { return s.arity == 0; });
    if (!has_constant) out.push_back(Symbol{"a", 0, SymbolKind::original});
    return out;
}

}  // namespace support
