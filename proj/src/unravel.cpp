#include "ctrs/unravel.hpp"

#include <algorithm>
#include <set>

#include "ctrs/error.hpp"

namespace ctrs {

std::string_view to_string(Unraveling u) {
    switch (u) {
    case Unraveling::seq: return "seq";
    case Unraveling::opt: return "opt";
    case Unraveling::sim: return "sim";
    }
    return "seq";
}

Unraveling parse_unraveling(std::string_view text) {
    if (text == "seq") return Unraveling::seq;
    if (text == "opt") return Unraveling::opt;
    if (text == "sim") return Unraveling::sim;
    throw Error(ErrorKind::unsupported_unraveling, "unknown unraveling '" + std::string(text) + "'");
}

std::string_view to_string(RuleKind k) {
    switch (k) {
    case RuleKind::original: return "original";
    case RuleKind::introduction: return "introduction";
    case RuleKind::switch_rule: return "switch";
    case RuleKind::elimination: return "elimination";
    }
    return "original";
}

const USymbolInfo* UnravelingResult::u_symbol(const std::string& name) const {
    auto it = u_symbols.find(name);
    return it == u_symbols.end() ? nullptr : &it->second;
}

const RuleProvenance& UnravelingResult::provenance_of(const std::string& rule) const {
    auto it = provenance.find(rule);
    if (it == provenance.end()) throw Error(ErrorKind::invalid_derivation, "unknown rule " + rule);
    return it->second;
}

bool UnravelingResult::supports_tb() const {
    for (const auto& [name, info] : u_symbols) {
        const ConditionalRule* rule = source.find(info.rule);
        if (!rule) return false;
        for (const auto& v : variables(rule->lhs)) {
            if (std::find(info.frozen.begin(), info.frozen.end(), v) == info.frozen.end()) return false;
        }
    }
    return true;
}

namespace {

std::string u_name(const ConditionalRule& rule, std::size_t i) {
    return std::string(reserved_prefix) + rule.name + "_" + std::to_string(i);
}

Term u_term(const std::string& name, std::vector<Term> conditional, const std::vector<std::string>& frozen) {
    for (const auto& x : frozen) conditional.push_back(Term::var(x));
    return Term::app(name, std::move(conditional));
}

void reject_reserved(const Ctrs& ctrs) {
    for (const auto& s : ctrs.signature()) {
        if (s.kind == SymbolKind::u_symbol) {
            throw Error(ErrorKind::reserved_prefix, "symbol '" + s.name + "' uses the reserved prefix "
                                                        + std::string(reserved_prefix));
        }
    }
}

void check_rhs_variables(const ConditionalRule& rule) {
    std::set<std::string> allowed = variable_set(rule.lhs);
    for (const auto& c : rule.conditions) {
        for (const auto& v : variables(c.target)) allowed.insert(v);
    }
    for (const auto& v : variables(rule.rhs)) {
        if (!allowed.contains(v)) {
            throw Error(ErrorKind::extra_variable_in_rhs,
                        rule.name + ": variable " + v + " of the right-hand side is bound nowhere");
        }
    }
}

void check_generated(const Rule& rule, const std::string& source) {
    auto lvars = variable_set(rule.lhs);
    for (const auto& v : variables(rule.rhs)) {
        if (!lvars.contains(v)) {
            throw Error(ErrorKind::extra_variable_in_rhs,
                        source + ": generated rule " + rule.name + " leaves " + v + " unbound");
        }
    }
}

// X_i of the sequential unraveling: Var(l, t_1, ..., t_{i-1}) by first occurrence.
std::vector<std::vector<std::string>> sequential_frozen(const ConditionalRule& rule) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> acc = variables(rule.lhs);
    for (const auto& c : rule.conditions) {
        out.push_back(acc);
        for (const auto& v : variables(c.target)) {
            if (std::find(acc.begin(), acc.end(), v) == acc.end()) acc.push_back(v);
        }
    }
    return out;
}

// X_i ∩ Var(t_i, s_{i+1}, t_{i+1}, ..., s_k, t_k, r)
std::vector<std::vector<std::string>> optimized_frozen(const ConditionalRule& rule) {
    auto seq = sequential_frozen(rule);
    const std::size_t k = rule.conditions.size();
    for (std::size_t i = 0; i < k; ++i) {
        std::set<std::string> later = variable_set(rule.rhs);
        for (std::size_t j = i; j < k; ++j) {
            if (j > i) {
                for (const auto& v : variables(rule.conditions[j].source)) later.insert(v);
            }
            for (const auto& v : variables(rule.conditions[j].target)) later.insert(v);
        }
        std::erase_if(seq[i], [&](const std::string& v) { return !later.contains(v); });
    }
    return seq;
}

UnravelingResult chained(const Ctrs& ctrs, Unraveling kind) {
    reject_reserved(ctrs);
    UnravelingResult out;
    out.kind = kind;
    out.source = ctrs;
    std::vector<Rule> rules;
    auto emit = [&](Rule rule, RuleProvenance prov, const std::string& source) {
        check_generated(rule, source);
        out.provenance.emplace(rule.name, std::move(prov));
        rules.push_back(std::move(rule));
    };
    for (const auto& rule : ctrs.rules()) {
        check_rhs_variables(rule);
        if (rule.is_unconditional()) {
            emit(rule.underlying(), {RuleKind::original, rule.name, 0}, rule.name);
            continue;
        }
        auto frozen = kind == Unraveling::seq ? sequential_frozen(rule) : optimized_frozen(rule);
        const std::size_t k = rule.conditions.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::string name = u_name(rule, i + 1);
            out.u_symbols.emplace(name, USymbolInfo{name, rule.name, i + 1, frozen[i], 1});
        }
        const auto& cs = rule.conditions;
        emit(Rule{rule.name + "_intro", rule.lhs, u_term(u_name(rule, 1), {cs[0].source}, frozen[0])},
             {RuleKind::introduction, rule.name, 0}, rule.name);
        for (std::size_t i = 0; i + 1 < k; ++i) {
            emit(Rule{rule.name + "_switch" + std::to_string(i + 1),
                      u_term(u_name(rule, i + 1), {cs[i].target}, frozen[i]),
                      u_term(u_name(rule, i + 2), {cs[i + 1].source}, frozen[i + 1])},
                 {RuleKind::switch_rule, rule.name, i + 1}, rule.name);
        }
        emit(Rule{rule.name + "_elim", u_term(u_name(rule, k), {cs[k - 1].target}, frozen[k - 1]), rule.rhs},
             {RuleKind::elimination, rule.name, k}, rule.name);
    }
    out.trs = Trs(std::move(rules));
    return out;
}

}  // namespace

UnravelingResult unravel_seq(const Ctrs& ctrs) { return chained(ctrs, Unraveling::seq); }

UnravelingResult unravel_opt(const Ctrs& ctrs) { return chained(ctrs, Unraveling::opt); }

UnravelingResult unravel_sim(const Ctrs& ctrs) {
    reject_reserved(ctrs);
    if (!classify(ctrs).normal_1ctrs) {
        throw Error(ErrorKind::not_normal_1ctrs, "the simultaneous unraveling needs a normal 1-CTRS");
    }
    UnravelingResult out;
    out.kind = Unraveling::sim;
    out.source = ctrs;
    std::vector<Rule> rules;
    for (const auto& rule : ctrs.rules()) {
        if (rule.is_unconditional()) {
            out.provenance.emplace(rule.name, RuleProvenance{RuleKind::original, rule.name, 0});
            rules.push_back(rule.underlying());
            continue;
        }
        std::string name = u_name(rule, 1);
        auto frozen = variables(rule.lhs);
        std::vector<Term> sources, targets;
        for (const auto& c : rule.conditions) {
            sources.push_back(c.source);
            targets.push_back(c.target);
        }
        out.u_symbols.emplace(name, USymbolInfo{name, rule.name, 1, frozen, rule.conditions.size()});
        rules.push_back(Rule{rule.name + "_intro", rule.lhs, u_term(name, std::move(sources), frozen)});
        out.provenance.emplace(rule.name + "_intro", RuleProvenance{RuleKind::introduction, rule.name, 0});
        rules.push_back(Rule{rule.name + "_elim", u_term(name, std::move(targets), frozen), rule.rhs});
        out.provenance.emplace(rule.name + "_elim",
                               RuleProvenance{RuleKind::elimination, rule.name, rule.conditions.size()});
    }
    out.trs = Trs(std::move(rules));
    return out;
}

UnravelingResult unravel(const Ctrs& ctrs, Unraveling kind) {
    switch (kind) {
    case Unraveling::seq: return unravel_seq(ctrs);
    case Unraveling::opt: return unravel_opt(ctrs);
    case Unraveling::sim: return unravel_sim(ctrs);
    }
    return unravel_seq(ctrs);
}

namespace {

Term tb_unchecked(const Term& t, const UnravelingResult& u) {
    if (t.is_var() || !t.has_u_symbol()) return t;
    if (const USymbolInfo* info = u.u_symbol(t.name())) {
        const ConditionalRule* rule = u.source.find(info->rule);
        if (!rule || t.arity() != info->arity()) {
            throw Error(ErrorKind::precondition_violated, "malformed U-term " + to_string(t));
        }
        Substitution sigma;
        for (std::size_t j = 0; j < info->frozen.size(); ++j) {
            sigma.bind(info->frozen[j], tb_unchecked(t.arg(info->conditional_args + j), u));
        }
        return apply(sigma, rule->lhs);
    }
    if (kind_of_symbol(t.name()) == SymbolKind::u_symbol) {
        throw Error(ErrorKind::precondition_violated, "U-symbol " + t.name() + " is not part of the unraveling");
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(tb_unchecked(a, u));
    return Term::app(t.name(), std::move(args));
}

}  // namespace

Term tb(const Term& t, const UnravelingResult& u) {
    if (u.kind != Unraveling::seq && !u.supports_tb()) {
        throw Error(ErrorKind::unsupported_unraveling,
                    "back-translation needs every left-hand side variable to be frozen; the "
                        + std::string(to_string(u.kind)) + " unraveling drops some");
    }
    return tb_unchecked(t, u);
}

Substitution tb(const Substitution& sigma, const UnravelingResult& u) {
    Substitution out;
    for (const auto& [x, t] : sigma.bindings()) out.bind(x, tb(t, u));
    return out;
}

MixedTermClass classify_term(const Term& t) {
    return t.has_u_symbol() ? MixedTermClass::mixed : MixedTermClass::original;
}

namespace {

void apply_at(Derivation& d, const Position& p, const Rule& rule) {
    d.append(apply_rule_at(d.final_term(), p, rule));
}

const Rule& generated(const UnravelingResult& u, const std::string& name) {
    const Rule* r = u.trs.find(name);
    if (!r) throw Error(ErrorKind::internal, "unraveling lacks rule " + name);
    return *r;
}

void simulate_into(Derivation& d, const ConditionalStep& step, const UnravelingResult& u);

void embed(Derivation& d, const ConditionalDerivation& inner, const Position& at, const UnravelingResult& u) {
    for (const auto& s : inner.steps) {
        // Simulate in isolation, then replay the steps under `at`.
        Derivation local(s.source);
        simulate_into(local, s, u);
        for (const auto& ls : local.steps) apply_at(d, at.concat(ls.position), ls.rule);
    }
}

void simulate_into(Derivation& d, const ConditionalStep& step, const UnravelingResult& u) {
    const auto& rule = step.rule;
    if (rule.is_unconditional()) {
        apply_at(d, step.position, generated(u, rule.name));
        return;
    }
    const Position& p = step.position;
    apply_at(d, p, generated(u, rule.name + "_intro"));
    const std::size_t k = rule.conditions.size();
    for (std::size_t i = 0; i < k; ++i) {
        embed(d, step.condition_witnesses.at(i), p.child(1), u);
        std::string next = i + 1 < k ? rule.name + "_switch" + std::to_string(i + 1) : rule.name + "_elim";
        apply_at(d, p, generated(u, next));
    }
}

}  // namespace

Derivation simulate_step(const ConditionalStep& step, const UnravelingResult& u) {
    if (u.kind != Unraveling::seq) {
        throw Error(ErrorKind::unsupported_unraveling, "step simulation follows the sequential unraveling");
    }
    Derivation d(step.source);
    simulate_into(d, step, u);
    if (!(d.final_term() == step.target)) {
        throw Error(ErrorKind::internal, "simulation of " + step.rule.name + " ended at " + to_string(d.final_term())
                                             + " instead of " + to_string(step.target));
    }
    return d;
}

Derivation simulate_derivation(const ConditionalDerivation& d, const UnravelingResult& u) {
    Derivation out(d.initial);
    for (const auto& s : d.steps) out.append(simulate_step(s, u));
    return out;
}

std::size_t constructive_length(const ConditionalStep& step) {
    if (step.rule.is_unconditional()) return 1;
    std::size_t n = step.rule.conditions.size() + 1;
    for (const auto& w : step.condition_witnesses) {
        for (const auto& s : w.steps) n += constructive_length(s);
    }
    return n;
}

}  // namespace ctrs
