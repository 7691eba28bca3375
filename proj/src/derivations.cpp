#include "ctrs/derivations.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ctrs/error.hpp"

namespace ctrs {

std::string format_report(const StrategyReport& r) {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream os;
    os << "innermost: " << yn(r.innermost) << '\n'
       << "u-eager: " << yn(r.u_eager) << '\n'
       << "almost-u-eager: " << yn(r.almost_u_eager) << '\n';
    if (r.first_violation) {
        os << "violation: step " << r.first_violation->step + 1 << " below U-term at '"
           << to_string(r.first_violation->position) << "'\n";
    }
    return os.str();
}

InnermostReport check_innermost(const Derivation& d, const Trs& trs) {
    validate_derivation(d, trs);
    InnermostReport out;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& s = d.steps[i];
        for (const auto& r : redexes(s.source, trs)) {
            if (s.position.strictly_above(r.position)) {
                out.innermost = false;
                out.violation = Violation{i, r.position};
                return out;
            }
        }
    }
    return out;
}

namespace {

void u_positions_into(const Term& t, std::vector<std::size_t>& path, std::vector<Position>& out) {
    if (t.is_var() || !t.has_u_symbol()) return;
    if (kind_of_symbol(t.name()) == SymbolKind::u_symbol) out.emplace_back(path);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i + 1);
        u_positions_into(t.arg(i), path, out);
        path.pop_back();
    }
}

void require_original_start(const Derivation& d, ErrorKind kind) {
    if (d.initial.has_u_symbol()) {
        throw Error(kind, "derivation starts at the mixed term " + to_string(d.initial));
    }
}

}  // namespace

std::vector<Position> u_term_positions(const Term& t) {
    std::vector<Position> out;
    std::vector<std::size_t> path;
    u_positions_into(t, path, out);
    return out;
}

StrategyReport check_almost_u_eager(const Derivation& d, const UnravelingResult& u) {
    require_original_start(d, ErrorKind::initial_term_not_original);
    StrategyReport out;
    out.innermost = check_innermost(d, u.trs).innermost;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const Position& p = d.steps[i].position;
        for (const auto& q : u_term_positions(d.steps[i].source)) {
            if (!q.above_or_equal(p)) {
                out.u_eager = false;
                continue;
            }
            if (i >= 1 && !q.above_or_equal(d.steps[i - 1].position) && out.almost_u_eager) {
                out.almost_u_eager = false;
                out.first_violation = Violation{i, q};
            }
        }
    }
    return out;
}

namespace {

std::optional<Position> innermost_enclosing_u_term(const Term& t, const Position& p) {
    std::optional<Position> best;
    for (const auto& q : u_term_positions(t)) {
        if (q.above_or_equal(p) && (!best || q.length() > best->length())) best = q;
    }
    return best;
}

}  // namespace

Derivation innermost_to_almost_u_eager(const Derivation& d, const UnravelingResult& u) {
    require_original_start(d, ErrorKind::precondition_violated);
    if (!check_innermost(d, u.trs).innermost) {
        throw Error(ErrorKind::precondition_violated, "reordering needs an innermost derivation");
    }
    Derivation cur(d.initial);
    for (const auto& step : d.steps) {
        cur.append(apply_rule_at(cur.final_term(), step.position, step.rule));
        const std::size_t n = cur.steps.size();
        if (n < 2) continue;
        const Position p = cur.steps[n - 1].position;
        auto q = innermost_enclosing_u_term(cur.steps[n - 1].source, p);
        if (!q) continue;
        const Position& before = cur.steps[n - 2].position;
        if (q->above_or_equal(before)) continue;
        if (!q->parallel(before)) {
            throw Error(ErrorKind::precondition_violated,
                        "step " + std::to_string(n - 1) + " lies strictly above the U-term at '" + to_string(*q) + "'");
        }
        std::size_t j = n - 2;
        while (j > 0 && q->parallel(cur.steps[j - 1].position)) --j;
        if (j == 0) {
            throw Error(ErrorKind::precondition_violated, "U-term at '" + to_string(*q) + "' present initially");
        }
        // Hoist the last step in front of the parallel block j .. n-2.
        std::vector<std::pair<Position, Rule>> tail;
        tail.emplace_back(p, cur.steps[n - 1].rule);
        for (std::size_t b = j; b + 1 < n; ++b) tail.emplace_back(cur.steps[b].position, cur.steps[b].rule);
        cur.steps.erase(cur.steps.begin() + static_cast<std::ptrdiff_t>(j), cur.steps.end());
        for (const auto& [pos, rule] : tail) cur.append(apply_rule_at(cur.final_term(), pos, rule));
    }
    if (!(cur.final_term() == d.final_term())) {
        throw Error(ErrorKind::internal, "reordering changed the final term");
    }
    return cur;
}

std::vector<Position> tb_positions(const Term& t, const Position& p, const UnravelingResult& u) {
    std::vector<Position> out{Position::root()};
    const Term* cur = &t;
    for (std::size_t idx : p.path()) {
        if (cur->is_var() || idx == 0 || idx > cur->arity()) {
            throw Error(ErrorKind::invalid_position, "position '" + to_string(p) + "' not in " + to_string(t));
        }
        if (const USymbolInfo* info = u.u_symbol(cur->name())) {
            if (idx <= info->conditional_args) return {};
            const std::string& x = info->frozen.at(idx - info->conditional_args - 1);
            const ConditionalRule* rule = u.source.find(info->rule);
            auto occ = variable_positions(rule->lhs, x);
            std::vector<Position> next;
            for (const auto& o : out) {
                for (const auto& c : occ) next.push_back(o.concat(c));
            }
            out = std::move(next);
            if (out.empty()) return out;
        } else {
            for (auto& o : out) o = o.child(idx);
        }
        cur = &cur->arg(idx - 1);
    }
    return out;
}

namespace {

struct BudgetExceeded {};

// Builds the CTRS derivation step by step: original steps map to themselves, and each
// elimination step absorbs the block that starts at its introduction step.
class WitnessBuilder {
public:
    WitnessBuilder(const Derivation& d, const UnravelingResult& u, const Ctrs& ctrs, std::size_t budget)
        : d_(d), u_(u), ctrs_(ctrs), budget_(budget) {}

    // tb(origin) ->* tb(origin after the listed steps), all of which lie at or below `base`.
    ConditionalDerivation translate(const std::vector<std::size_t>& idxs, const Position& base, const Term& origin) {
        ConditionalDerivation out(tb(origin, u_));
        std::size_t t = 0;
        while (t < idxs.size()) {
            const Step& s = d_.steps[idxs[t]];
            const Term& here = subterm_at(s.source, base);
            const Position rel = s.position.suffix(base.length());
            const RuleProvenance& prov = u_.provenance_of(s.rule.name);
            switch (prov.kind) {
            case RuleKind::original: {
                ConditionalDerivation local = original_step(s);
                lift(out, local, tb_positions(here, rel, u_));
                ++t;
                break;
            }
            case RuleKind::introduction: {
                std::size_t end = t;
                if (find_block(idxs, t, prov.source_rule, end)) {
                    std::vector<std::size_t> block(idxs.begin() + static_cast<std::ptrdiff_t>(t),
                                                   idxs.begin() + static_cast<std::ptrdiff_t>(end) + 1);
                    ConditionalDerivation local = translate_block(block, s.position);
                    lift(out, local, tb_positions(here, rel, u_));
                    t = end + 1;
                } else {
                    ++t;  // abandoned evaluation: tb is unchanged
                }
                break;
            }
            case RuleKind::switch_rule:
                ++t;
                break;
            case RuleKind::elimination:
                throw Error(ErrorKind::not_almost_u_eager, "elimination step " + std::to_string(idxs[t] + 1)
                                                               + " is not preceded by its own evaluation block");
            }
        }
        Term last = idxs.empty() ? origin : subterm_at(d_.steps[idxs.back()].target, base);
        expect(out.final_term() == tb(last, u_), "translation ended at " + to_string(out.final_term()));
        return out;
    }

private:
    static void expect(bool ok, const std::string& what) {
        if (!ok) throw Error(ErrorKind::internal, "soundness witness: " + what);
    }

    void charge(std::size_t n) {
        used_ += n;
        if (used_ > budget_) throw BudgetExceeded{};
    }

    // Embeds `local` at every position of `at`, one copy after the other.
    void lift(ConditionalDerivation& out, const ConditionalDerivation& local, const std::vector<Position>& at) {
        for (const auto& pos : at) {
            expect(subterm_at(out.final_term(), pos) == local.initial, "lift mismatch at '" + to_string(pos) + "'");
            for (const auto& cs : local.steps) {
                charge(1);
                ConditionalStep moved = cs;
                moved.source = out.final_term();
                moved.target = replace_at(moved.source, pos, cs.target);
                moved.position = pos.concat(cs.position);
                out.append(std::move(moved));
            }
        }
    }

    ConditionalDerivation original_step(const Step& s) {
        const ConditionalRule* rule = ctrs_.find(s.rule.name);
        expect(rule && rule->is_unconditional(), "no unconditional rule " + s.rule.name);
        Substitution sigma = tb(s.sigma, u_).restrict(variables(rule->lhs));
        Term source = apply(sigma, rule->lhs);
        ConditionalDerivation local(source);
        Term target = apply(sigma, rule->rhs);
        local.append(ConditionalStep{source, std::move(target), Position::root(), *rule, std::move(sigma), 1, {}});
        return local;
    }

    bool find_block(const std::vector<std::size_t>& idxs, std::size_t start, const std::string& rule,
                    std::size_t& end) const {
        const Position& p = d_.steps[idxs[start]].position;
        for (std::size_t t = start + 1; t < idxs.size(); ++t) {
            const Step& s = d_.steps[idxs[t]];
            if (!p.above_or_equal(s.position)) return false;
            if (s.position != p) continue;
            const RuleProvenance& prov = u_.provenance_of(s.rule.name);
            if (prov.source_rule != rule) return false;
            if (prov.kind == RuleKind::elimination) {
                end = t;
                return true;
            }
            if (prov.kind != RuleKind::switch_rule) return false;
        }
        return false;
    }

    ConditionalDerivation translate_block(const std::vector<std::size_t>& block, const Position& p) {
        const Step& intro = d_.steps[block.front()];
        const RuleProvenance& prov = u_.provenance_of(intro.rule.name);
        const ConditionalRule* rule = ctrs_.find(prov.source_rule);
        expect(rule != nullptr, "unknown conditional rule " + prov.source_rule);
        const std::size_t k = rule->conditions.size();

        std::vector<std::size_t> bounds;  // offsets of the steps at p
        for (std::size_t t = 0; t < block.size(); ++t) {
            if (d_.steps[block[t]].position == p) bounds.push_back(t);
        }
        expect(bounds.size() == k + 1, "block of " + rule->name + " has " + std::to_string(bounds.size())
                                           + " steps at its root");

        // Combined substitution: each variable keeps the back-translation of its
        // first binding; `evolution` records how that binding changed since.
        Substitution star;
        std::map<std::string, ConditionalDerivation> evolution;
        auto introduce = [&](const std::string& x, const Substitution& from) {
            if (star.contains(x)) return;
            Term v = tb(from.get(x), u_);
            star.bind(x, v);
            evolution.emplace(x, ConditionalDerivation(v));
        };
        for (const auto& x : variables(rule->lhs)) introduce(x, intro.sigma);

        std::vector<ConditionalDerivation> witnesses;
        std::size_t depth = 1;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& cond = rule->conditions[i];
            const Step& opener = d_.steps[block[bounds[i]]];
            const Step& closer = d_.steps[block[bounds[i + 1]]];
            const Term& uterm = subterm_at(opener.target, p);
            const USymbolInfo* info = u_.u_symbol(uterm.name());
            expect(info && info->index == i + 1, "unexpected U-term " + to_string(uterm));

            std::vector<std::size_t> in_condition;
            std::map<std::size_t, std::vector<std::size_t>> in_variable;
            for (std::size_t t = bounds[i] + 1; t < bounds[i + 1]; ++t) {
                std::size_t c = d_.steps[block[t]].position[p.length()];
                if (c == 1) in_condition.push_back(block[t]);
                else in_variable[c].push_back(block[t]);
            }

            // s_i σ* ->* s_i tb(σ_i) by replaying variable evolution, then the condition itself.
            ConditionalDerivation w(apply(star, cond.source));
            for (const auto& x : variables(cond.source)) {
                lift(w, evolution.at(x), variable_positions(cond.source, x));
            }
            w.append(translate(in_condition, p.child(1), uterm.arg(0)));

            for (const auto& [c, idxs] : in_variable) {
                const std::string& x = info->frozen.at(c - 2);
                evolution.at(x).append(translate(idxs, p.child(c), uterm.arg(c - 1)));
            }
            for (const auto& y : variables(cond.target)) introduce(y, closer.sigma);
            expect(w.final_term() == apply(star, cond.target),
                   "condition " + std::to_string(i + 1) + " of " + rule->name + " ends at " + to_string(w.final_term())
                       + " rather than " + to_string(apply(star, cond.target)));
            depth = std::max(depth, w.max_depth() + 1);
            witnesses.push_back(std::move(w));
        }

        Term source = apply(star, rule->lhs);
        Term target = apply(star, rule->rhs);
        ConditionalDerivation local(source);
        local.append(ConditionalStep{source, target, Position::root(), *rule, star, depth, std::move(witnesses)});
        charge(1);
        for (const auto& x : variables(rule->rhs)) {
            lift(local, evolution.at(x), variable_positions(rule->rhs, x));
        }
        return local;
    }

    const Derivation& d_;
    const UnravelingResult& u_;
    const Ctrs& ctrs_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

}  // namespace

WitnessResult soundness_witness(const Derivation& d, const UnravelingResult& u, const Ctrs& ctrs,
                                const ConditionalBounds& bounds) {
    if (u.kind != Unraveling::seq) {
        throw Error(ErrorKind::unsupported_unraveling, "soundness witnesses need the sequential unraveling");
    }
    if (u.source.rules() != ctrs.rules()) {
        throw Error(ErrorKind::precondition_violated, "unraveling was computed from a different system");
    }
    Classification c = classify(ctrs);
    if (!c.dctrs) throw Error(ErrorKind::not_deterministic, "soundness witnesses need a DCTRS");
    if (!c.right_stable) throw Error(ErrorKind::not_right_stable, "soundness witnesses need a right-stable DCTRS");

    StrategyReport report = check_almost_u_eager(d, u);
    const Derivation* input = &d;
    Derivation reordered(d.initial);
    if (!report.almost_u_eager) {
        if (!report.innermost) {
            throw Error(ErrorKind::not_almost_u_eager,
                        "derivation is neither almost U-eager nor innermost (step "
                            + std::to_string(report.first_violation->step + 1) + ")");
        }
        reordered = innermost_to_almost_u_eager(d, u);
        input = &reordered;
    }

    WitnessResult out;
    try {
        WitnessBuilder builder(*input, u, ctrs, bounds.search_budget);
        std::vector<std::size_t> all(input->steps.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        ConditionalDerivation cd = builder.translate(all, Position::root(), input->initial);
        if (cd.max_depth() > bounds.max_depth) {
            out.unknown = true;
            out.reason = "witness needs depth " + std::to_string(cd.max_depth());
            return out;
        }
        std::string problem;
        if (!is_valid_conditional_derivation(cd, ctrs, &problem)) {
            throw Error(ErrorKind::internal, "constructed witness does not replay: " + problem);
        }
        out.witness = SoundnessWitness{std::move(cd), tb(d.final_term(), u)};
    } catch (const BudgetExceeded&) {
        out.unknown = true;
        out.reason = "witness exceeds " + std::to_string(bounds.search_budget) + " steps";
    }
    return out;
}

}  // namespace ctrs
