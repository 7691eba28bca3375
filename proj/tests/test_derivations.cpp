#include <doctest.h>

#include <random>
#include <utility>

#include "ctrs/derivations.hpp"
#include "ctrs/error.hpp"
#include "ctrs/trace.hpp"
#include "support.hpp"

using namespace ctrs;
using support::term;

namespace {

Derivation build(const std::string& start, const UnravelingResult& u,
                 const std::vector<std::pair<std::string, std::string>>& steps) {
    Derivation d(term(start));
    for (const auto& [pos, rule] : steps) {
        const Rule* r = u.trs.find(rule);
        REQUIRE(r);
        d.append(apply_rule_at(d.final_term(), parse_position(pos), *r));
    }
    return d;
}

ErrorKind kind_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::internal;
}

// The unsound shape: both U-terms are still live when g(x,x) fires at the root.
Derivation unsound_r2(const UnravelingResult& u) {
    return build("g(f(a),f(b))", u,
                 {{"1", "r8_intro"}, {"1.1.1", "r1"}, {"1.2", "r2"}, {"2", "r8_intro"}, {"2.1.1", "r3"},
                  {"2.2", "r4"}, {"", "r7"}, {"1.1", "r5"}, {"2.1", "r6"}, {"1", "r8_elim"}, {"2", "r8_elim"}});
}

}  // namespace

TEST_CASE("innermost check") {
    UnravelingResult u5 = unravel_seq(support::fixture("R5"));
    Derivation good = build("A", u5, {{"", "r3_intro"}, {"1.1", "r1"}});
    CHECK(check_innermost(good, u5.trs).innermost);

    Derivation bad = build("A", u5, {{"", "r3_intro"}, {"1", "r2"}});
    InnermostReport r = check_innermost(bad, u5.trs);
    CHECK_FALSE(r.innermost);
    REQUIRE(r.violation);
    CHECK(r.violation->step == 1);
    CHECK(r.violation->position == Position{1, 1});

    CHECK(check_innermost(Derivation(term("A")), u5.trs).innermost);

    Derivation broken = good;
    broken.steps[1].target = term("B");
    CHECK(kind_of([&] { check_innermost(broken, u5.trs); }) == ErrorKind::invalid_derivation);
}

TEST_CASE("almost U-eager check") {
    UnravelingResult u2 = unravel_seq(support::fixture("R2"));
    Derivation unsound = unsound_r2(u2);
    CHECK(unsound.final_term() == term("h(pair(d,k),pair(d,l))"));
    StrategyReport r = check_almost_u_eager(unsound, u2);
    CHECK_FALSE(r.almost_u_eager);
    CHECK_FALSE(r.u_eager);
    CHECK_FALSE(r.innermost);
    REQUIRE(r.first_violation);
    CHECK(r.first_violation->step == 7);
    CHECK(r.first_violation->position == Position{1});

    Derivation shaped = build("f(c)", u2, {{"", "r8_intro"}, {"1", "r5"}, {"", "r8_elim"}});
    CHECK(shaped.final_term() == term("pair(c,k)"));
    StrategyReport s = check_almost_u_eager(shaped, u2);
    CHECK(s.almost_u_eager);
    CHECK(s.u_eager);
    CHECK(s.innermost);
    CHECK_FALSE(s.first_violation);

    Derivation plain = build("g(a,b)", u2, {{"1", "r1"}, {"2", "r3"}, {"", "r7"}});
    CHECK(check_almost_u_eager(plain, u2).almost_u_eager);

    Derivation mixed(term("U_r8_1(s(c),c)"));
    CHECK(kind_of([&] { check_almost_u_eager(mixed, u2); }) == ErrorKind::initial_term_not_original);
    CHECK(u_term_positions(term("h(U_r8_1(s(c),c),U_r8_1(U_r8_1(a,b),c))"))
          == std::vector<Position>{Position{1}, Position{2}, Position{2, 1}});
    CHECK_FALSE(format_report(r).empty());
}

TEST_CASE("reordering innermost derivations") {
    UnravelingResult u2 = unravel_seq(support::fixture("R2"));
    Derivation interleaved = build("pair(f(c),f(c))", u2,
                                   {{"1", "r8_intro"}, {"2", "r8_intro"}, {"1.1", "r5"}, {"2.1", "r6"},
                                    {"1", "r8_elim"}, {"2", "r8_elim"}});
    REQUIRE(check_innermost(interleaved, u2.trs).innermost);
    REQUIRE_FALSE(check_almost_u_eager(interleaved, u2).almost_u_eager);

    Derivation out = innermost_to_almost_u_eager(interleaved, u2);
    CHECK(is_valid_derivation(out, u2.trs));
    CHECK(out.initial == interleaved.initial);
    CHECK(out.final_term() == interleaved.final_term());
    CHECK(out.length() == interleaved.length());
    StrategyReport r = check_almost_u_eager(out, u2);
    CHECK(r.innermost);
    CHECK(r.almost_u_eager);
    CHECK(support::oracle_almost_u_eager(out));

    Derivation shaped = build("f(c)", u2, {{"", "r8_intro"}, {"1", "r5"}, {"", "r8_elim"}});
    Derivation same = innermost_to_almost_u_eager(shaped, u2);
    CHECK(format_trace(same) == format_trace(shaped));
    CHECK(innermost_to_almost_u_eager(Derivation(term("a")), u2).length() == 0);

    CHECK(kind_of([&] { innermost_to_almost_u_eager(unsound_r2(u2), u2); }) == ErrorKind::precondition_violated);
}

TEST_CASE("soundness witnesses") {
    Ctrs r2 = support::fixture("R2");
    UnravelingResult u2 = unravel_seq(r2);
    ConditionalBounds b{10, 10000};

    Derivation shaped = build("f(c)", u2, {{"", "r8_intro"}, {"1", "r5"}, {"", "r8_elim"}});
    WitnessResult w = soundness_witness(shaped, u2, r2, b);
    REQUIRE(w.witness);
    const auto& cd = w.witness->ctrs_derivation;
    REQUIRE(cd.length() == 1);
    CHECK(cd.steps[0].target == term("pair(c,k)"));
    CHECK(cd.steps[0].rule.name == "r8");
    REQUIRE(cd.steps[0].condition_witnesses.size() == 1);
    const auto& cond = cd.steps[0].condition_witnesses[0];
    CHECK(cond.initial == term("s(c)"));
    CHECK(cond.final_term() == term("t(k)"));
    CHECK(cond.length() == 1);
    CHECK(w.witness->final_term == term("pair(c,k)"));

    Derivation plain = build("g(a,b)", u2, {{"1", "r1"}, {"2", "r3"}, {"", "r7"}});
    WitnessResult wp = soundness_witness(plain, u2, r2, b);
    REQUIRE(wp.witness);
    REQUIRE(wp.witness->ctrs_derivation.length() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(wp.witness->ctrs_derivation.steps[i].target == plain.steps[i].target);
        CHECK(wp.witness->ctrs_derivation.steps[i].position == plain.steps[i].position);
    }

    Ctrs r5 = support::fixture("R5");
    UnravelingResult u5 = unravel_seq(r5);
    Derivation stuck = build("A", u5, {{"", "r3_intro"}, {"1.1", "r1"}});
    WitnessResult ws = soundness_witness(stuck, u5, r5, b);
    REQUIRE(ws.witness);
    CHECK(ws.witness->ctrs_derivation.length() == 0);
    CHECK(ws.witness->final_term == term("A"));

    Derivation interleaved = build("pair(f(c),f(c))", u2,
                                   {{"1", "r8_intro"}, {"2", "r8_intro"}, {"1.1", "r5"}, {"2.1", "r6"},
                                    {"1", "r8_elim"}, {"2", "r8_elim"}});
    WitnessResult wi = soundness_witness(interleaved, u2, r2, b);
    REQUIRE(wi.witness);
    CHECK(wi.witness->ctrs_derivation.length() == 2);
    CHECK(wi.witness->ctrs_derivation.final_term() == term("pair(pair(c,k),pair(c,l))"));
    CHECK(is_valid_conditional_derivation(wi.witness->ctrs_derivation, r2));

    CHECK(kind_of([&] { soundness_witness(unsound_r2(u2), u2, r2, b); }) == ErrorKind::not_almost_u_eager);
    CHECK(kind_of([&] { soundness_witness(shaped, unravel_opt(r2), r2, b); }) == ErrorKind::unsupported_unraveling);
    Ctrs unstable({ConditionalRule{"r1", term("f(x)"), term("x"), {{term("g(x)"), term("x")}}}});
    CHECK(kind_of([&] { soundness_witness(Derivation(term("a")), unravel_seq(unstable), unstable, b); })
          == ErrorKind::not_right_stable);

    WitnessResult tight = soundness_witness(interleaved, u2, r2, {10, 1});
    CHECK(tight.unknown);
    CHECK_FALSE(tight.witness);
}

TEST_CASE("tb positions") {
    UnravelingResult u2 = unravel_seq(support::fixture("R2"));
    Term t = term("h(U_r8_1(s(c),d),a)");
    CHECK(tb_positions(t, Position{2}, u2) == std::vector<Position>{Position{2}});
    CHECK(tb_positions(t, Position{1, 2}, u2) == std::vector<Position>{Position{1, 1}});
    CHECK(tb_positions(t, Position{1, 1}, u2).empty());
}

TEST_CASE("property: classifiers agree with the definitions") {
    for (const char* name : {"R1", "R2", "R5"}) {
        UnravelingResult u = unravel_seq(support::fixture(name));
        std::vector<std::string> seeds = std::string(name) == "R2" ? std::vector<std::string>{"f(a)"}
                                                                   : std::vector<std::string>{"a", "A"};
        for (const auto& s : seeds) {
            for (const auto& d : support::enumerate_derivations(term(s), u.trs, 5, 3000)) {
                StrategyReport r = check_almost_u_eager(d, u);
                CHECK(r.innermost == support::oracle_innermost(d, u.trs));
                CHECK(r.almost_u_eager == support::oracle_almost_u_eager(d));
                CHECK(r.u_eager == support::oracle_u_eager(d));
                if (r.u_eager) CHECK(r.almost_u_eager);
            }
        }
    }
}

TEST_CASE("property: reordering and witnesses on random systems") {
    std::mt19937 rng(31);
    ConditionalBounds b{4, 300};
    for (int n = 0; n < 40; ++n) {
        Ctrs c = support::random_right_stable_dctrs(rng);
        UnravelingResult u = unravel_seq(c);
        auto sig = support::original_symbols(c);
        for (int k = 0; k < 3; ++k) {
            Derivation d = support::random_innermost_derivation(rng, support::random_ground_term(rng, sig, 7), u.trs, 8);
            Derivation out = innermost_to_almost_u_eager(d, u);
            CHECK(is_valid_derivation(out, u.trs));
            CHECK(out.final_term() == d.final_term());
            CHECK(out.length() == d.length());
            CHECK(support::oracle_almost_u_eager(out));
            CHECK(support::oracle_innermost(out, u.trs));

            WitnessResult w = soundness_witness(d, u, c, b);
            if (w.unknown) continue;
            REQUIRE(w.witness);
            CHECK(is_valid_conditional_derivation(w.witness->ctrs_derivation, c));
            CHECK(w.witness->final_term == tb(d.final_term(), u));
            CHECK(w.witness->ctrs_derivation.final_term() == w.witness->final_term);
        }
    }
}
