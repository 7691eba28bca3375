#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ctrs/error.hpp"
#include "support.hpp"

using namespace ctrs;
using support::term;

namespace {

std::set<std::string> step_labels(const ConditionalStepSet& s) {
    std::set<std::string> out;
    for (const auto& st : s.steps) {
        out.insert(to_string(st.position) + "|" + st.rule.name + "|" + to_string(st.target));
    }
    return out;
}

}  // namespace

TEST_CASE("classification of the fixtures") {
    Classification r2 = classify(support::fixture("R2"));
    CHECK(r2.dctrs);
    CHECK(r2.right_stable);
    CHECK_FALSE(r2.normal_1ctrs);
    CHECK(r2.constructors.contains("t"));
    CHECK_FALSE(r2.constructors.contains("s"));
    const auto& f_rule = r2.rules.back();
    CHECK(f_rule.type3);
    CHECK_FALSE(f_rule.type1);

    Classification r5 = classify(support::fixture("R5"));
    CHECK(r5.normal_1ctrs);
    CHECK(r5.dctrs);
    CHECK(r5.right_stable);

    Ctrs shared({ConditionalRule{"r1", term("f(x)"), term("x"), {{term("g(x)"), term("x")}}}});
    Classification cs = classify(shared);
    CHECK(cs.dctrs);
    CHECK_FALSE(cs.right_stable);

    Ctrs nondet({ConditionalRule{"r1", term("f(x)"), term("x"), {{term("g(y)"), term("a")}}}});
    Classification cn = classify(nondet);
    CHECK_FALSE(cn.dctrs);
    CHECK_FALSE(cn.rules[0].deterministic);
    CHECK(cn.rules[0].type3);
}

TEST_CASE("classification flags follow from their definitions") {
    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
        Classification c = classify(support::random_right_stable_dctrs(rng));
        for (const auto& r : c.rules) {
            if (r.deterministic) CHECK(r.type3);
            if (r.normal) CHECK(r.type1);
        }
    }
}

TEST_CASE("conditional successors") {
    Ctrs r2 = support::fixture("R2");
    ConditionalBounds b{5, 1000};
    auto fc = conditional_successors(term("f(c)"), r2, b);
    CHECK_FALSE(fc.exhausted);
    CHECK(step_labels(fc) == std::set<std::string>{"|r8|pair(c,k)", "|r8|pair(c,l)"});
    for (const auto& s : fc.steps) {
        CHECK(s.depth == 2);
        REQUIRE(s.condition_witnesses.size() == 1);
        CHECK(s.condition_witnesses[0].initial == term("s(c)"));
        CHECK(s.condition_witnesses[0].length() == 1);
    }

    Ctrs r5 = support::fixture("R5");
    auto a = conditional_successors(term("A"), r5, b);
    REQUIRE(a.steps.size() == 1);
    CHECK(a.steps[0].target == term("B"));
    REQUIRE(a.steps[0].condition_witnesses.size() == 1);
    const auto& w = a.steps[0].condition_witnesses[0];
    CHECK(w.initial == term("f(a)"));
    CHECK(w.final_term() == term("b"));
    CHECK(w.max_depth() == 1);

    Ctrs r1 = support::fixture("R1");
    auto sb = conditional_successors(term("s(b)"), r1, b);
    CHECK(sb.steps.empty());
    CHECK_FALSE(sb.exhausted);

    Ctrs nondet({ConditionalRule{"r1", term("f(x)"), term("x"), {{term("g(y)"), term("a")}}}});
    CHECK_THROWS_AS(conditional_successors(term("f(a)"), nondet, b), Error);
}

TEST_CASE("reachability and joinability") {
    Ctrs r2 = support::fixture("R2");
    ConditionalBounds b{10, 10000};
    auto no = reachable(term("g(f(a),f(b))"), term("h(pair(d,k),pair(d,l))"), r2, b);
    CHECK(no.answer == Decision::no);
    auto refl = reachable(term("g(a,b)"), term("g(a,b)"), r2, b);
    CHECK(refl.answer == Decision::yes);
    CHECK(refl.witness->length() == 0);
    auto ac = reachable(term("a"), term("c"), r2, b);
    CHECK(ac.answer == Decision::yes);
    CHECK(ac.witness->length() == 1);

    auto fa = reachable(term("f(a)"), term("pair(c,l)"), r2, b);
    REQUIRE(fa.answer == Decision::yes);
    CHECK(is_valid_conditional_derivation(*fa.witness, r2));

    Ctrs r1 = support::fixture("R1");
    CHECK(joinable_ctrs(term("s(b)"), term("s(c)"), r1, b).answer == Decision::no);
    CHECK(joinable_ctrs(term("s(b)"), term("s(b)"), r1, b).answer == Decision::yes);

    Ctrs r4 = support::fixture("R4");
    auto j = joinable_ctrs(term("pair(d,k)"), term("pair(d,l)"), r4, b);
    REQUIRE(j.answer == Decision::yes);
    CHECK(is_valid_conditional_derivation(*j.left, r4));
    CHECK(is_valid_conditional_derivation(*j.right, r4));
    CHECK(j.left->final_term() == j.right->final_term());
    auto e = joinable_ctrs(term("pair(d,k)"), term("pair(e,e)"), r4, b);
    CHECK(e.answer == Decision::yes);
    CHECK(*e.common_reduct == term("pair(e,e)"));

    // Tight budgets make the answer honest rather than wrong.
    auto tight = reachable(term("g(f(a),f(b))"), term("h(pair(d,k),pair(d,l))"), r2, {10, 3});
    CHECK(tight.answer == Decision::unknown);
}

TEST_CASE("validation rejects tampered steps") {
    Ctrs r2 = support::fixture("R2");
    auto fc = conditional_successors(term("f(c)"), r2, {5, 1000});
    REQUIRE_FALSE(fc.steps.empty());
    ConditionalStep s = fc.steps[0];
    CHECK(is_valid_conditional_step(s, r2));
    ConditionalStep shallow = s;
    shallow.depth = 1;
    CHECK_FALSE(is_valid_conditional_step(shallow, r2));
    ConditionalStep no_witness = s;
    no_witness.condition_witnesses.clear();
    CHECK_FALSE(is_valid_conditional_step(no_witness, r2));
    ConditionalStep wrong_target = s;
    wrong_target.target = term("pair(c,c)");
    std::string why;
    CHECK_FALSE(is_valid_conditional_step(wrong_target, r2, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("property: depth soundness, monotonicity, transitivity") {
    std::mt19937 rng(23);
    for (int n = 0; n < 60; ++n) {
        Ctrs c = support::random_right_stable_dctrs(rng);
        auto sig = support::original_symbols(c);
        bool normal = classify(c).normal_1ctrs;
        for (int k = 0; k < 4; ++k) {
            Term t = support::random_ground_term(rng, sig, 6);
            auto lo = conditional_successors(t, c, {2, 200});
            auto hi = conditional_successors(t, c, {3, 200});
            for (const auto& s : lo.steps) CHECK(is_valid_conditional_step(s, c));
            auto lo_l = step_labels(lo);
            auto hi_l = step_labels(hi);
            if (!hi.exhausted) CHECK(std::includes(hi_l.begin(), hi_l.end(), lo_l.begin(), lo_l.end()));
            if (normal) {
                for (const auto& s : hi.steps) CHECK(s.sigma.domain() == variable_set(s.rule.lhs));
            }
            if (!hi.steps.empty()) {
                const auto& first = hi.steps.front();
                auto onward = conditional_successors(first.target, c, {3, 200});
                if (!onward.steps.empty()) {
                    ConditionalDerivation d(t);
                    d.append(first);
                    d.append(onward.steps.front());
                    CHECK(is_valid_conditional_derivation(d, c));
                }
            }
        }
    }
}
