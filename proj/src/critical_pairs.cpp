#include "ctrs/critical_pairs.hpp"

namespace ctrs {

std::vector<CriticalPair> critical_pairs(const Trs& trs) {
    std::vector<CriticalPair> out;
    const auto& rules = trs.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (const auto& p : positions(rules[i].lhs)) {
            if (subterm_at(rules[i].lhs, p).is_var()) continue;
            for (std::size_t j = 0; j < rules.size(); ++j) {
                if (p.is_root() && j <= i) continue;
                FreshVariables fresh;
                Substitution outer_renaming = fresh.renaming_for({rules[i].lhs, rules[i].rhs});
                Substitution inner_renaming = fresh.renaming_for({rules[j].lhs, rules[j].rhs});
                Term l1 = apply(outer_renaming, rules[i].lhs);
                Term r1 = apply(outer_renaming, rules[i].rhs);
                Term l2 = apply(inner_renaming, rules[j].lhs);
                Term r2 = apply(inner_renaming, rules[j].rhs);
                auto mgu = unify(subterm_at(l1, p), l2);
                if (!mgu) continue;
                CriticalPair cp{apply(*mgu, l1), apply(*mgu, r1), replace_at(apply(*mgu, l1), p, apply(*mgu, r2)),
                                rules[i].name, rules[j].name, p, false};
                cp.trivial = cp.left == cp.right;
                out.push_back(std::move(cp));
            }
        }
    }
    return out;
}

std::string to_string(const CriticalPair& cp) {
    return "<" + to_string(cp.left) + ", " + to_string(cp.right) + "> from " + cp.outer_rule + "/" + cp.inner_rule
           + " at '" + to_string(cp.position) + "'";
}

}  // namespace ctrs
