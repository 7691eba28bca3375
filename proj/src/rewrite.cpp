#include "ctrs/rewrite.hpp"

#include <algorithm>
#include <deque>

#include "ctrs/error.hpp"

namespace ctrs {

std::string to_string(const Rule& rule) {
    return to_string(rule.lhs) + " -> " + to_string(rule.rhs);
}

Trs::Trs(std::vector<Rule> rules) : rules_(std::move(rules)) {
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
        const Rule& r = rules_[i];
        if (r.lhs.is_var()) throw Error(ErrorKind::invalid_rule, r.name + ": variable left-hand side");
        auto lvars = variable_set(r.lhs);
        for (const auto& v : variables(r.rhs)) {
            if (!lvars.contains(v)) {
                throw Error(ErrorKind::invalid_rule,
                            r.name + ": variable " + v + " of the right-hand side not in the left-hand side");
            }
        }
        if (!index_.emplace(r.name, i).second) {
            throw Error(ErrorKind::invalid_rule, "duplicate rule name " + r.name);
        }
        record(r.lhs);
        record(r.rhs);
    }
}

const Rule* Trs::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &rules_[it->second];
}

std::size_t Trs::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::invalid_derivation, "unknown rule " + name);
    return it->second;
}

const Term& Derivation::term_at(std::size_t i) const {
    if (i > steps.size()) {
        throw Error(ErrorKind::index_out_of_range,
                    std::to_string(i) + " > derivation length " + std::to_string(steps.size()));
    }
    return i == 0 ? initial : steps[i - 1].target;
}

void Derivation::append(Step step) { steps.push_back(std::move(step)); }

void Derivation::append(const Derivation& other) {
    if (!(other.initial == final_term())) {
        throw Error(ErrorKind::invalid_derivation, "cannot append derivation starting at "
                                                        + to_string(other.initial) + " to one ending at "
                                                        + to_string(final_term()));
    }
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

namespace {

void collect_redexes(const Term& t, std::vector<std::size_t>& path, const Trs& trs,
                     std::vector<Redex>& out) {
    if (t.is_var()) return;
    const auto& rules = trs.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (auto sigma = match(rules[i].lhs, t)) out.push_back(Redex{Position(path), i, std::move(*sigma)});
    }
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i + 1);
        collect_redexes(t.args()[i], path, trs, out);
        path.pop_back();
    }
}

bool reducible(const Term& t, const Trs& trs) {
    if (t.is_var()) return false;
    for (const auto& r : trs.rules()) {
        if (match(r.lhs, t)) return true;
    }
    for (const auto& a : t.args()) {
        if (reducible(a, trs)) return true;
    }
    return false;
}

}  // namespace

std::vector<Redex> redexes(const Term& t, const Trs& trs) {
    std::vector<Redex> out;
    std::vector<std::size_t> path;
    collect_redexes(t, path, trs, out);
    return out;
}

bool is_normal_form(const Term& t, const Trs& trs) { return !reducible(t, trs); }

bool has_redex_below(const Term& t, const Position& p, const Trs& trs) {
    const Term& sub = subterm_at(t, p);
    if (sub.is_var()) return false;
    return std::any_of(sub.args().begin(), sub.args().end(),
                       [&](const Term& a) { return reducible(a, trs); });
}

Step make_step(const Term& t, const Redex& redex, const Trs& trs) {
    const Rule& rule = trs.rules().at(redex.rule_index);
    Term target = replace_at(t, redex.position, apply(redex.sigma, rule.rhs));
    return Step{t, std::move(target), redex.position, rule, redex.sigma};
}

Step apply_rule_at(const Term& t, const Position& p, const Rule& rule) {
    if (!is_valid_position(t, p)) {
        throw Error(ErrorKind::invalid_derivation, "position " + to_string(p) + " not in " + to_string(t));
    }
    auto sigma = match(rule.lhs, subterm_at(t, p));
    if (!sigma) {
        throw Error(ErrorKind::invalid_derivation, "rule " + rule.name + " does not apply at position '"
                                                       + to_string(p) + "' of " + to_string(t));
    }
    Term target = replace_at(t, p, apply(*sigma, rule.rhs));
    return Step{t, std::move(target), p, rule, std::move(*sigma)};
}

std::vector<Step> all_successors(const Term& t, const Trs& trs) {
    std::vector<Step> out;
    for (const auto& r : redexes(t, trs)) out.push_back(make_step(t, r, trs));
    return out;
}

std::vector<Step> innermost_successors(const Term& t, const Trs& trs) {
    auto all = redexes(t, trs);
    std::vector<Step> out;
    for (const auto& r : all) {
        bool inner = std::none_of(all.begin(), all.end(), [&](const Redex& other) {
            return r.position.strictly_above(other.position);
        });
        if (inner) out.push_back(make_step(t, r, trs));
    }
    return out;
}

std::vector<Step> successors(const Term& t, const Trs& trs, Strategy strategy) {
    return strategy == Strategy::innermost ? innermost_successors(t, trs) : all_successors(t, trs);
}

bool is_valid_step(const Step& step) {
    if (!is_valid_position(step.source, step.position)) return false;
    const Term& redex = subterm_at(step.source, step.position);
    if (!(apply(step.sigma, step.rule.lhs) == redex)) return false;
    return replace_at(step.source, step.position, apply(step.sigma, step.rule.rhs)) == step.target;
}

namespace {

std::optional<std::string> derivation_problem(const Derivation& d, const Trs& trs) {
    Term cur = d.initial;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const Step& s = d.steps[i];
        std::string where = "step " + std::to_string(i + 1);
        if (!(s.source == cur)) return where + ": source does not continue the derivation";
        const Rule* rule = trs.find(s.rule.name);
        if (!rule || !(*rule == s.rule)) return where + ": rule " + s.rule.name + " is not in the system";
        if (!is_valid_step(s)) return where + ": rule " + s.rule.name + " does not rewrite at '" + to_string(s.position) + "'";
        cur = s.target;
    }
    return std::nullopt;
}

}  // namespace

bool is_valid_derivation(const Derivation& d, const Trs& trs) { return !derivation_problem(d, trs); }

void validate_derivation(const Derivation& d, const Trs& trs) {
    if (auto problem = derivation_problem(d, trs)) throw Error(ErrorKind::invalid_derivation, *problem);
}

std::vector<Term> ReductionGraph::normal_forms() const {
    auto out = normal_forms_;
    std::sort(out.begin(), out.end());
    return out;
}

Derivation ReductionGraph::derivation_to(const Term& t) const {
    auto it = parent_.find(t);
    if (it == parent_.end()) throw Error(ErrorKind::precondition_violated, to_string(t) + " was not reached");
    std::vector<Step> rev;
    while (it->second) {
        rev.push_back(*it->second);
        it = parent_.find(it->second->source);
    }
    std::reverse(rev.begin(), rev.end());
    return Derivation(root_, std::move(rev));
}

ReductionGraph explore(const Term& t, const Trs& trs, const SearchBudget& budget, Strategy strategy) {
    ReductionGraph g;
    g.root_ = t;
    g.parent_.emplace(t, std::nullopt);
    g.order_.push_back(t);
    std::size_t head = 0;
    while (head < g.order_.size()) {
        Term cur = g.order_[head++];
        auto next = successors(cur, trs, strategy);
        if (next.empty()) {
            g.normal_forms_.push_back(cur);
            continue;
        }
        for (auto& step : next) {
            if (g.parent_.contains(step.target)) continue;
            if (g.order_.size() >= budget.max_nodes
                || (budget.max_term_size > 0 && step.target.size() > budget.max_term_size)) {
                g.exhausted_ = true;
                continue;
            }
            Term target = step.target;
            g.parent_.emplace(target, std::move(step));
            g.order_.push_back(std::move(target));
        }
    }
    return g;
}

NormalFormResult normal_forms(const Term& t, const Trs& trs, const SearchBudget& budget, Strategy strategy) {
    auto graph = std::make_shared<ReductionGraph>(explore(t, trs, budget, strategy));
    NormalFormResult out;
    out.normal_forms = graph->normal_forms();
    out.exhausted = graph->exhausted();
    out.graph = std::move(graph);
    return out;
}

Derivation normalize(const Term& t, const Trs& trs, Strategy strategy, std::size_t max_steps) {
    Derivation d(t);
    while (d.length() < max_steps) {
        auto next = successors(d.final_term(), trs, strategy);
        if (next.empty()) break;
        d.append(std::move(next.front()));
    }
    return d;
}

std::set<Position> one_step_descendants(const Position& q, const Step& step) {
    if (!is_valid_position(step.source, q)) {
        throw Error(ErrorKind::invalid_position, to_string(q) + " in " + to_string(step.source));
    }
    const Position& p = step.position;
    if (q.above_or_equal(p) || p.parallel(q)) return {q};
    // q = p.q' strictly below p: find the variable of l on the path q'.
    Position rel = q.suffix(p.length());
    const Term* cur = &step.rule.lhs;
    std::size_t depth = 0;
    while (!cur->is_var() && depth < rel.length()) {
        cur = &cur->args()[rel[depth] - 1];
        ++depth;
    }
    if (!cur->is_var()) return {};
    Position below = rel.suffix(depth);
    std::set<Position> out;
    for (const auto& occ : variable_positions(step.rule.rhs, cur->name())) {
        out.insert(p.concat(occ).concat(below));
    }
    return out;
}

std::set<Position> descendants(const Position& q, const Derivation& d, std::size_t from, std::size_t to) {
    if (from > to || to > d.length()) {
        throw Error(ErrorKind::index_out_of_range, "range [" + std::to_string(from) + ", " + std::to_string(to)
                                                       + "] in derivation of length " + std::to_string(d.length()));
    }
    if (!is_valid_position(d.term_at(from), q)) {
        throw Error(ErrorKind::invalid_position, to_string(q) + " in " + to_string(d.term_at(from)));
    }
    std::set<Position> current{q};
    for (std::size_t i = from; i < to; ++i) {
        std::set<Position> next;
        for (const auto& pos : current) {
            auto ds = one_step_descendants(pos, d.steps[i]);
            next.insert(ds.begin(), ds.end());
        }
        current = std::move(next);
    }
    return current;
}

}  // namespace ctrs
