#include "ctrs/confluence.hpp"

#include "ctrs/error.hpp"

namespace ctrs {

TrsJoinResult joinable_trs(const Term& u, const Term& v, const Trs& trs, [[maybe_unused]] bool terminating,
                           std::size_t budget) {
    TrsJoinResult out;
    if (u == v) {
        out.answer = Decision::yes;
        out.common_reduct = u;
        out.left = Derivation(u);
        out.right = Derivation(v);
        return out;
    }
    SearchBudget b{budget, 0};
    ReductionGraph gu = explore(u, trs, b, Strategy::full);
    ReductionGraph gv = explore(v, trs, b, Strategy::full);
    for (const auto& t : gu.nodes()) {
        if (gv.contains(t)) {
            out.answer = Decision::yes;
            out.common_reduct = t;
            out.left = gu.derivation_to(t);
            out.right = gv.derivation_to(t);
            return out;
        }
    }
    out.answer = gu.exhausted() || gv.exhausted() ? Decision::unknown : Decision::no;
    return out;
}

LocalConfluenceResult confluent_terminating(const Trs& trs, const Precedence& prec, std::size_t budget) {
    for (const auto& r : trs.rules()) {
        if (!lpo_greater(r.lhs, r.rhs, prec)) {
            throw Error(ErrorKind::precedence_invalid, "precedence does not orient " + r.name + ": " + to_string(r));
        }
    }
    LocalConfluenceResult out;
    out.answer = Decision::yes;
    for (const auto& cp : critical_pairs(trs)) {
        TrsJoinResult j = joinable_trs(cp.left, cp.right, trs, true, budget);
        if (j.answer == Decision::yes) {
            out.joins.push_back({cp, std::move(*j.left), std::move(*j.right)});
            continue;
        }
        out.answer = j.answer;
        out.counterexample = cp;
        out.joins.clear();
        return out;
    }
    return out;
}

std::string_view to_string(Answer a) { return a == Answer::confluent ? "CONFLUENT" : "MAYBE"; }

Verdict check_ctrs_confluence(const Ctrs& ctrs, const ConfluenceOptions& options) {
    Verdict v;
    Classification c = classify(ctrs);
    v.trace.push_back(std::string("classification: dctrs=") + (c.dctrs ? "yes" : "no")
                      + " right-stable=" + (c.right_stable ? "yes" : "no"));
    if (!c.dctrs || !c.right_stable) {
        v.trace.push_back("not a right-stable DCTRS; the unraveling criterion does not apply");
        return v;
    }
    UnravelingResult u = unravel_seq(ctrs);
    v.trace.push_back("unraveled with seq: " + std::to_string(u.trs.rules().size()) + " rules");

    TerminationResult term = prove_termination_lpo(u.trs, options.lpo_budget);
    if (!term.precedence) {
        v.trace.push_back(term.budget_exhausted ? "termination: unknown (LPO budget exhausted)"
                                                : "termination: unknown (no LPO precedence orients all rules)");
        return v;
    }
    v.trace.push_back("termination: LPO precedence found after " + std::to_string(term.checks) + " checks");

    LocalConfluenceResult lc = confluent_terminating(u.trs, *term.precedence, options.bounds.search_budget);
    if (lc.answer != Decision::yes) {
        v.trace.push_back("critical pair " + to_string(*lc.counterexample)
                          + (lc.answer == Decision::no ? " is not joinable" : " could not be joined within budget"));
        v.trace.push_back("U_seq is not shown confluent; this does not disprove confluence of the CTRS");
        if (!ctrs.is_unconditional()) {
            UnravelingResult opt = unravel_opt(ctrs);
            auto opt_term = prove_termination_lpo(opt.trs, options.lpo_budget);
            if (opt_term.precedence
                && confluent_terminating(opt.trs, *opt_term.precedence, options.bounds.search_budget).answer
                       == Decision::yes) {
                v.trace.push_back("note: U_opt is confluent, which would not justify confluence here because "
                                  "the optimized unraveling is unsound for it");
            }
        }
        return v;
    }
    v.trace.push_back("all " + std::to_string(lc.joins.size()) + " critical pairs of U_seq are joinable");
    v.answer = Answer::confluent;
    v.certificate = Certificate{std::move(c), std::move(u), std::move(*term.precedence), std::move(lc.joins)};
    return v;
}

JoinabilityWitness sound_joinability_witness(const Term& u, const Term& v, const Ctrs& ctrs, const Certificate& cert,
                                             const ConditionalBounds& bounds) {
    if (u == v) return {u, ConditionalDerivation(u), ConditionalDerivation(v)};
    if (u.has_u_symbol() || v.has_u_symbol()) {
        throw Error(ErrorKind::initial_term_not_original, "joinability witnesses start from original terms");
    }
    const UnravelingResult& unr = cert.unraveling;
    Derivation du = normalize(u, unr.trs, Strategy::innermost, bounds.search_budget);
    Derivation dv = normalize(v, unr.trs, Strategy::innermost, bounds.search_budget);
    if (!is_normal_form(du.final_term(), unr.trs) || !is_normal_form(dv.final_term(), unr.trs)) {
        throw Error(ErrorKind::witness_exceeded_bounds, "normalization exceeded " + std::to_string(bounds.search_budget)
                                                            + " steps");
    }
    if (!(du.final_term() == dv.final_term())) {
        throw Error(ErrorKind::not_joinable, to_string(u) + " and " + to_string(v) + " have normal forms "
                                                 + to_string(du.final_term()) + " and " + to_string(dv.final_term()));
    }
    WitnessResult wu = soundness_witness(du, unr, ctrs, bounds);
    WitnessResult wv = soundness_witness(dv, unr, ctrs, bounds);
    if (!wu.witness || !wv.witness) {
        throw Error(ErrorKind::witness_exceeded_bounds, wu.witness ? wv.reason : wu.reason);
    }
    return {wu.witness->final_term, std::move(wu.witness->ctrs_derivation), std::move(wv.witness->ctrs_derivation)};
}

}  // namespace ctrs
