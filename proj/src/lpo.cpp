#include "ctrs/lpo.hpp"

#include <algorithm>

namespace ctrs {

bool Precedence::add(const std::string& f, const std::string& g) {
    if (!can_add(f, g)) return false;
    if (greater(f, g)) {
        generators_.emplace_back(f, g);
        return true;
    }
    std::vector<std::string> above{f}, below{g};
    for (const auto& [a, b] : closure_) {
        if (b == f) above.push_back(a);
        if (a == g) below.push_back(b);
    }
    for (const auto& a : above) {
        for (const auto& b : below) closure_.emplace(a, b);
    }
    generators_.emplace_back(f, g);
    return true;
}

std::optional<Precedence> precedence_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
    Precedence p;
    for (const auto& [f, g] : pairs) {
        if (!p.add(f, g)) return std::nullopt;
    }
    return p;
}

bool lpo_greater(const Term& s, const Term& t, const Precedence& prec) {
    if (s.is_var()) return false;
    if (t.is_var()) return occurs(t.name(), s);
    for (const auto& si : s.args()) {
        if (si == t || lpo_greater(si, t, prec)) return true;
    }
    auto dominates_args = [&] {
        return std::all_of(t.args().begin(), t.args().end(), [&](const Term& tj) { return lpo_greater(s, tj, prec); });
    };
    if (s.name() == t.name() && s.arity() == t.arity()) {
        std::size_t i = 0;
        while (i < s.arity() && s.arg(i) == t.arg(i)) ++i;
        if (i == s.arity()) return false;
        return lpo_greater(s.arg(i), t.arg(i), prec) && dominates_args();
    }
    return prec.greater(s.name(), t.name()) && dominates_args();
}

namespace {

struct Goal {
    Term s;
    Term t;
    bool strict;
};

class Solver {
public:
    explicit Solver(std::size_t budget) : budget_(budget) {}

    std::optional<Precedence> solve(std::vector<Goal> goals, Precedence prec) {
        if (goals.empty()) return prec;
        if (++checks_ > budget_) {
            exhausted_ = true;
            return std::nullopt;
        }
        Goal g = goals.back();
        goals.pop_back();
        const Term& s = g.s;
        const Term& t = g.t;
        if (!g.strict && s == t) return solve(std::move(goals), std::move(prec));
        if (s.is_var()) return std::nullopt;
        if (t.is_var()) {
            if (!occurs(t.name(), s)) return std::nullopt;
            return solve(std::move(goals), std::move(prec));
        }

        auto attempt = [&](std::vector<Goal> extra, Precedence p) -> std::optional<Precedence> {
            auto next = goals;
            next.insert(next.end(), extra.rbegin(), extra.rend());
            return solve(std::move(next), std::move(p));
        };
        auto dominate = [&](std::size_t from) {
            std::vector<Goal> out;
            for (std::size_t j = from; j < t.arity(); ++j) out.push_back({s, t.arg(j), true});
            return out;
        };

        if (s.name() == t.name() && s.arity() == t.arity()) {
            std::size_t i = 0;
            while (i < s.arity() && s.arg(i) == t.arg(i)) ++i;
            if (i < s.arity()) {
                auto extra = dominate(i + 1);
                extra.insert(extra.begin(), Goal{s.arg(i), t.arg(i), true});
                if (auto r = attempt(std::move(extra), prec)) return r;
                if (exhausted_) return std::nullopt;
            }
        } else if (prec.can_add(s.name(), t.name())) {
            Precedence p = prec;
            p.add(s.name(), t.name());
            if (auto r = attempt(dominate(0), std::move(p))) return r;
            if (exhausted_) return std::nullopt;
        }
        for (const auto& si : s.args()) {
            if (auto r = attempt({Goal{si, t, false}}, prec)) return r;
            if (exhausted_) return std::nullopt;
        }
        return std::nullopt;
    }

    bool exhausted() const noexcept { return exhausted_; }
    std::size_t checks() const noexcept { return checks_; }

private:
    std::size_t budget_;
    std::size_t checks_ = 0;
    bool exhausted_ = false;
};

}  // namespace

TerminationResult prove_termination_lpo(const Trs& trs, std::size_t budget) {
    std::vector<Goal> goals;
    // Goals are popped from the back; keep rule order.
    for (auto it = trs.rules().rbegin(); it != trs.rules().rend(); ++it) goals.push_back({it->lhs, it->rhs, true});
    Solver solver(budget);
    TerminationResult out;
    out.precedence = solver.solve(std::move(goals), Precedence{});
    out.budget_exhausted = solver.exhausted();
    out.checks = solver.checks();
    return out;
}

}  // namespace ctrs
