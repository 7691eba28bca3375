#include "ctrs/conditional.hpp"

#include <algorithm>
#include <sstream>

#include "ctrs/error.hpp"

namespace ctrs {

std::string to_string(const ConditionalRule& rule) {
    std::string out = to_string(rule.lhs) + " -> " + to_string(rule.rhs);
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
        out += i == 0 ? " | " : ", ";
        out += to_string(rule.conditions[i].source) + " == " + to_string(rule.conditions[i].target);
    }
    return out;
}

Ctrs::Ctrs(std::vector<ConditionalRule> rules) : rules_(std::move(rules)) {
    std::map<std::string, std::size_t> arity;
    auto record = [&](const Term& t) {
        for (const auto& s : symbols(t)) {
            auto [it, fresh] = arity.emplace(s.name, s.arity);
            if (!fresh && it->second != s.arity) {
                throw Error(ErrorKind::invalid_rule, "symbol '" + s.name + "' used with arities "
                                                         + std::to_string(it->second) + " and "
                                                         + std::to_string(s.arity));
            }
            signature_.insert(s);
        }
    };
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& r = rules_[i];
        if (r.lhs.is_var()) throw Error(ErrorKind::invalid_rule, r.name + ": variable left-hand side");
        if (!index_.emplace(r.name, i).second) throw Error(ErrorKind::invalid_rule, "duplicate rule name " + r.name);
        record(r.lhs);
        record(r.rhs);
        for (const auto& c : r.conditions) {
            record(c.source);
            record(c.target);
        }
    }
}

const ConditionalRule* Ctrs::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &rules_[it->second];
}

std::size_t Ctrs::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::invalid_derivation, "unknown rule " + name);
    return it->second;
}

std::vector<Rule> Ctrs::underlying_rules() const {
    std::vector<Rule> out;
    out.reserve(rules_.size());
    for (const auto& r : rules_) out.push_back(r.underlying());
    return out;
}

bool Ctrs::irreducible_underlying(const Term& t) const {
    if (t.is_var()) return true;
    for (const auto& r : rules_) {
        if (match(r.lhs, t)) return false;
    }
    return std::all_of(t.args().begin(), t.args().end(), [&](const Term& a) { return irreducible_underlying(a); });
}

std::set<std::string> Ctrs::constructors() const {
    std::set<std::string> defined;
    for (const auto& r : rules_) defined.insert(r.lhs.name());
    std::set<std::string> out;
    for (const auto& s : signature_) {
        if (!defined.contains(s.name)) out.insert(s.name);
    }
    return out;
}

bool Ctrs::is_unconditional() const {
    return std::all_of(rules_.begin(), rules_.end(), [](const ConditionalRule& r) { return r.is_unconditional(); });
}

// ---------------------------------------------------------------------------
// Classification

namespace {

bool subset_of(const std::vector<std::string>& vars, const std::set<std::string>& allowed) {
    return std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return allowed.contains(v); });
}

bool constructor_term(const Term& t, const std::set<std::string>& constructors) {
    if (t.is_var()) return true;
    if (!constructors.contains(t.name())) return false;
    return std::all_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return constructor_term(a, constructors); });
}

}  // namespace

Classification classify(const Ctrs& ctrs) {
    Classification out;
    out.constructors = ctrs.constructors();
    out.dctrs = out.right_stable = out.normal_1ctrs = true;
    for (const auto& rule : ctrs.rules()) {
        RuleClassification rc;
        rc.rule = rule.name;
        auto lvars = variable_set(rule.lhs);
        std::set<std::string> cond_vars;
        for (const auto& c : rule.conditions) {
            for (const auto& v : variables(c.source)) cond_vars.insert(v);
            for (const auto& v : variables(c.target)) cond_vars.insert(v);
        }
        std::set<std::string> lc = lvars;
        lc.insert(cond_vars.begin(), cond_vars.end());

        rc.type1 = subset_of(variables(rule.rhs), lvars)
                   && std::all_of(cond_vars.begin(), cond_vars.end(), [&](const auto& v) { return lvars.contains(v); });
        rc.type3 = subset_of(variables(rule.rhs), lc);

        // Var(s_i) ⊆ Var(l, t_1, ..., t_{i-1})
        rc.deterministic = rc.type3;
        std::set<std::string> bound = lvars;
        for (const auto& c : rule.conditions) {
            if (!subset_of(variables(c.source), bound)) rc.deterministic = false;
            for (const auto& v : variables(c.target)) bound.insert(v);
        }

        rc.normal = rc.type1;
        for (const auto& c : rule.conditions) {
            if (!c.target.is_ground() || !ctrs.irreducible_underlying(c.target)) rc.normal = false;
        }

        // Right-stability: t_i is a linear constructor term or ground irreducible,
        // and shares no variable with l, s_1, t_1, ..., s_i.
        rc.right_stable = true;
        std::set<std::string> left_of = lvars;
        for (const auto& c : rule.conditions) {
            for (const auto& v : variables(c.source)) left_of.insert(v);
            bool shape = (is_linear(c.target) && constructor_term(c.target, out.constructors))
                         || (c.target.is_ground() && ctrs.irreducible_underlying(c.target));
            auto tvars = variables(c.target);
            bool disjoint = std::none_of(tvars.begin(), tvars.end(), [&](const auto& v) { return left_of.contains(v); });
            if (!shape || !disjoint) rc.right_stable = false;
            left_of.insert(tvars.begin(), tvars.end());
        }

        out.dctrs = out.dctrs && rc.deterministic;
        out.right_stable = out.right_stable && rc.right_stable;
        out.normal_1ctrs = out.normal_1ctrs && rc.normal;
        out.rules.push_back(std::move(rc));
    }
    return out;
}

std::string format_classification(const Classification& c) {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream os;
    for (const auto& r : c.rules) {
        os << "rule " << r.rule << ": type1=" << yn(r.type1) << " type3=" << yn(r.type3)
           << " deterministic=" << yn(r.deterministic) << " normal=" << yn(r.normal)
           << " right-stable=" << yn(r.right_stable) << '\n';
    }
    os << "system: dctrs=" << yn(c.dctrs) << " right-stable=" << yn(c.right_stable)
       << " normal-1ctrs=" << yn(c.normal_1ctrs) << '\n';
    os << "constructors (not the root of any left-hand side):";
    for (const auto& s : c.constructors) os << ' ' << s;
    os << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Derivations

std::size_t ConditionalDerivation::max_depth() const noexcept {
    std::size_t d = 0;
    for (const auto& s : steps) d = std::max(d, s.depth);
    return d;
}

std::size_t ConditionalDerivation::total_steps() const noexcept {
    std::size_t n = 0;
    for (const auto& s : steps) {
        ++n;
        for (const auto& w : s.condition_witnesses) n += w.total_steps();
    }
    return n;
}

void ConditionalDerivation::append(ConditionalStep step) { steps.push_back(std::move(step)); }

void ConditionalDerivation::append(const ConditionalDerivation& other) {
    if (!(other.initial == final_term())) {
        throw Error(ErrorKind::internal, "cannot append conditional derivation starting at "
                                             + to_string(other.initial) + " to one ending at "
                                             + to_string(final_term()));
    }
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

namespace {

bool fail_with(std::string* problem, const std::string& what) {
    if (problem) *problem = what;
    return false;
}

bool check_chain(const ConditionalDerivation& d, const Ctrs& ctrs, std::size_t max_step_depth,
                 std::string* problem) {
    Term cur = d.initial;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& s = d.steps[i];
        if (!(s.source == cur)) {
            return fail_with(problem, "step " + std::to_string(i + 1) + " does not continue from " + to_string(cur));
        }
        if (s.depth > max_step_depth) {
            return fail_with(problem, "step " + std::to_string(i + 1) + " has depth " + std::to_string(s.depth)
                                          + " above " + std::to_string(max_step_depth));
        }
        if (!is_valid_conditional_step(s, ctrs, problem)) return false;
        cur = s.target;
    }
    return true;
}

}  // namespace

bool is_valid_conditional_step(const ConditionalStep& step, const Ctrs& ctrs, std::string* problem) {
    const ConditionalRule* rule = ctrs.find(step.rule.name);
    if (!rule || !(*rule == step.rule)) return fail_with(problem, "rule " + step.rule.name + " not in the system");
    if (!is_valid_position(step.source, step.position)) {
        return fail_with(problem, "position '" + to_string(step.position) + "' not in " + to_string(step.source));
    }
    std::vector<std::string> vars;
    collect_variables(rule->lhs, vars);
    collect_variables(rule->rhs, vars);
    for (const auto& c : rule->conditions) {
        collect_variables(c.source, vars);
        collect_variables(c.target, vars);
    }
    for (const auto& v : vars) {
        if (!step.sigma.contains(v)) return fail_with(problem, "substitution of " + rule->name + " misses " + v);
    }
    if (!(subterm_at(step.source, step.position) == apply(step.sigma, rule->lhs))) {
        return fail_with(problem, rule->name + " left-hand side does not match at '" + to_string(step.position)
                                      + "' of " + to_string(step.source));
    }
    if (!(replace_at(step.source, step.position, apply(step.sigma, rule->rhs)) == step.target)) {
        return fail_with(problem, rule->name + " target mismatch: " + to_string(step.target));
    }
    if (step.depth == 0) return fail_with(problem, "step depth 0");
    if (step.condition_witnesses.size() != rule->conditions.size()) {
        return fail_with(problem, rule->name + " needs " + std::to_string(rule->conditions.size())
                                      + " condition witnesses");
    }
    for (std::size_t i = 0; i < rule->conditions.size(); ++i) {
        const auto& w = step.condition_witnesses[i];
        Term from = apply(step.sigma, rule->conditions[i].source);
        Term to = apply(step.sigma, rule->conditions[i].target);
        if (!(w.initial == from) || !(w.final_term() == to)) {
            return fail_with(problem, rule->name + " condition " + std::to_string(i + 1) + " witness runs "
                                          + to_string(w.initial) + " ->* " + to_string(w.final_term())
                                          + ", expected " + to_string(from) + " ->* " + to_string(to));
        }
        if (!check_chain(w, ctrs, step.depth - 1, problem)) return false;
    }
    return true;
}

bool is_valid_conditional_derivation(const ConditionalDerivation& d, const Ctrs& ctrs, std::string* problem) {
    return check_chain(d, ctrs, static_cast<std::size_t>(-1), problem);
}

void validate_conditional_derivation(const ConditionalDerivation& d, const Ctrs& ctrs) {
    std::string problem;
    if (!is_valid_conditional_derivation(d, ctrs, &problem)) throw Error(ErrorKind::invalid_derivation, problem);
}

namespace {

void format_into(std::ostream& os, const ConditionalDerivation& d, const std::string& indent) {
    os << indent << "TERM " << d.initial << '\n';
    for (const auto& s : d.steps) {
        os << indent << "STEP pos=" << to_string(s.position) << " rule=" << s.rule.name << '\n';
        for (std::size_t i = 0; i < s.condition_witnesses.size(); ++i) {
            std::string nested = indent.empty() ? "# " : indent + "  ";
            os << nested << "condition " << (i + 1) << " (depth < " << s.depth << "):\n";
            format_into(os, s.condition_witnesses[i], nested + "  ");
        }
    }
}

}  // namespace

std::string format_conditional_derivation(const ConditionalDerivation& d) {
    std::ostringstream os;
    format_into(os, d, "");
    return os.str();
}

std::string_view to_string(Decision d) {
    switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::unknown: return "unknown";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Conditional rewriting

ConditionalDerivation ConditionalRewriter::Reach::derivation_to(const Term& t) const {
    auto it = parent.find(t);
    if (it == parent.end()) throw Error(ErrorKind::internal, to_string(t) + " was not reached");
    std::vector<ConditionalStep> rev;
    while (it->second) {
        rev.push_back(*it->second);
        it = parent.find(it->second->source);
    }
    ConditionalDerivation d(nodes.front());
    d.steps.assign(rev.rbegin(), rev.rend());
    return d;
}

ConditionalRewriter::ConditionalRewriter(const Ctrs& ctrs, ConditionalBounds bounds)
    : ctrs_(ctrs), bounds_(bounds) {
    if (bounds_.max_depth == 0 || bounds_.search_budget == 0) {
        throw Error(ErrorKind::precondition_violated, "conditional rewriting bounds must be positive");
    }
    if (!classify(ctrs_).dctrs) {
        throw Error(ErrorKind::not_deterministic, "conditional rewriting needs a deterministic CTRS");
    }
    step_cache_.resize(bounds_.max_depth + 1);
    reach_cache_.resize(bounds_.max_depth + 1);
}

namespace {

struct PartialMatch {
    Substitution sigma;
    std::vector<ConditionalDerivation> witnesses;
};

std::string step_key(const ConditionalStep& s) {
    return to_string(s.position) + "|" + s.rule.name + "|" + to_string(s.sigma);
}

void collect_subterms(const Term& t, std::vector<std::size_t>& path,
                      std::vector<std::pair<Position, Term>>& out) {
    if (t.is_var()) return;
    out.emplace_back(Position(path), t);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i + 1);
        collect_subterms(t.args()[i], path, out);
        path.pop_back();
    }
}

}  // namespace

bool ConditionalRewriter::spend(std::size_t units) {
    if (bounds_.total_budget != 0 && spent_ + units > bounds_.total_budget) return false;
    spent_ += units;
    return true;
}

const ConditionalRewriter::Steps& ConditionalRewriter::steps_at(const Term& t, std::size_t level) {
    auto& cache = step_cache_.at(level);
    if (auto it = cache.find(t); it != cache.end()) return *it->second;

    auto entry = std::make_unique<Steps>();
    if (level == 0) {
        // R_0 is empty; the answer is final only if nothing could ever apply.
        entry->complete = ctrs_.irreducible_underlying(t);
        return *cache.emplace(t, std::move(entry)).first->second;
    }
    if (!spend(1)) {
        entry->complete = false;
        return *cache.emplace(t, std::move(entry)).first->second;
    }

    std::vector<std::pair<Position, Term>> subterms;
    std::vector<std::size_t> path;
    collect_subterms(t, path, subterms);
    std::set<std::string> seen;
    for (const auto& [pos, sub] : subterms) {
        for (const auto& rule : ctrs_.rules()) {
            auto first = match(rule.lhs, sub);
            if (!first) continue;
            std::vector<PartialMatch> partial{PartialMatch{std::move(*first), {}}};
            for (const auto& cond : rule.conditions) {
                std::vector<PartialMatch> next;
                for (const auto& pm : partial) {
                    const Reach& r = reach(apply(pm.sigma, cond.source), level - 1);
                    entry->complete = entry->complete && r.complete;
                    for (const auto& node : r.nodes) {
                        auto extended = match(cond.target, node, pm.sigma);
                        if (!extended) continue;
                        PartialMatch more{std::move(*extended), pm.witnesses};
                        more.witnesses.push_back(r.derivation_to(node));
                        // Witnesses are copied with everything nested in them.
                        std::size_t cost = 1;
                        for (const auto& w : more.witnesses) cost += w.total_steps();
                        if (!spend(cost)) {
                            entry->complete = false;
                            break;
                        }
                        next.push_back(std::move(more));
                    }
                }
                partial = std::move(next);
                if (partial.empty()) break;
            }
            for (auto& pm : partial) {
                std::size_t depth = 1;
                for (const auto& w : pm.witnesses) depth = std::max(depth, w.max_depth() + 1);
                Term target = replace_at(t, pos, apply(pm.sigma, rule.rhs));
                ConditionalStep step{t, std::move(target), pos, rule, std::move(pm.sigma), depth,
                                     std::move(pm.witnesses)};
                if (seen.insert(step_key(step)).second) entry->steps.push_back(std::move(step));
            }
        }
    }
    return *cache.emplace(t, std::move(entry)).first->second;
}

const ConditionalRewriter::Reach& ConditionalRewriter::reach(const Term& t, std::size_t level) {
    auto& cache = reach_cache_.at(level);
    if (auto it = cache.find(t); it != cache.end()) return *it->second;

    auto entry = std::make_unique<Reach>();
    entry->nodes.push_back(t);
    entry->parent.emplace(t, std::nullopt);
    std::size_t head = 0;
    while (head < entry->nodes.size()) {
        Term cur = entry->nodes[head++];
        const Steps& next = steps_at(cur, level);
        entry->complete = entry->complete && next.complete;
        for (const auto& step : next.steps) {
            if (entry->parent.contains(step.target)) continue;
            if (entry->nodes.size() >= bounds_.search_budget) {
                entry->complete = false;
                continue;
            }
            entry->parent.emplace(step.target, step);
            entry->nodes.push_back(step.target);
        }
    }
    return *cache.emplace(t, std::move(entry)).first->second;
}

ConditionalStepSet ConditionalRewriter::successors(const Term& t) {
    ConditionalStepSet out;
    std::set<std::string> seen;
    for (std::size_t level = 1; level <= bounds_.max_depth; ++level) {
        const Steps& s = steps_at(t, level);
        for (const auto& step : s.steps) {
            if (seen.insert(step_key(step)).second) out.steps.push_back(step);
        }
        if (level == bounds_.max_depth) out.exhausted = !s.complete;
    }
    std::stable_sort(out.steps.begin(), out.steps.end(), [&](const ConditionalStep& a, const ConditionalStep& b) {
        if (a.position != b.position) return a.position < b.position;
        return ctrs_.index_of(a.rule.name) < ctrs_.index_of(b.rule.name);
    });
    return out;
}

ReachResult ConditionalRewriter::reachable(const Term& from, const Term& to) {
    const Reach& r = reach(from, bounds_.max_depth);
    ReachResult out;
    if (r.parent.contains(to)) {
        out.answer = Decision::yes;
        out.witness = r.derivation_to(to);
    } else {
        out.answer = r.complete ? Decision::no : Decision::unknown;
    }
    return out;
}

JoinResult ConditionalRewriter::joinable(const Term& u, const Term& v) {
    const Reach& ru = reach(u, bounds_.max_depth);
    const Reach& rv = reach(v, bounds_.max_depth);
    JoinResult out;
    for (const auto& node : ru.nodes) {
        if (rv.parent.contains(node)) {
            out.answer = Decision::yes;
            out.common_reduct = node;
            out.left = ru.derivation_to(node);
            out.right = rv.derivation_to(node);
            return out;
        }
    }
    out.answer = ru.complete && rv.complete ? Decision::no : Decision::unknown;
    return out;
}

ConditionalStepSet conditional_successors(const Term& t, const Ctrs& ctrs, const ConditionalBounds& bounds) {
    return ConditionalRewriter(ctrs, bounds).successors(t);
}

ReachResult reachable(const Term& u, const Term& v, const Ctrs& ctrs, const ConditionalBounds& bounds) {
    return ConditionalRewriter(ctrs, bounds).reachable(u, v);
}

JoinResult joinable_ctrs(const Term& u, const Term& v, const Ctrs& ctrs, const ConditionalBounds& bounds) {
    return ConditionalRewriter(ctrs, bounds).joinable(u, v);
}

}  // namespace ctrs
