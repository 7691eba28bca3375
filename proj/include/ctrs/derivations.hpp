#pragma once

#include <optional>
#include <string>

#include "ctrs/conditional.hpp"
#include "ctrs/unravel.hpp"

namespace ctrs {

struct Violation {
    /// 0-based step index.
    std::size_t step = 0;
    /// For innermost: a redex strictly below the step. For the U-eager checks: the U-term.
    Position position;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct InnermostReport {
    bool innermost = true;
    std::optional<Violation> violation;
};

struct StrategyReport {
    bool innermost = true;
    bool u_eager = true;
    bool almost_u_eager = true;
    /// First violation of almost U-eagerness.
    std::optional<Violation> first_violation;
};

std::string format_report(const StrategyReport& r);

/// Throws invalid-derivation if `d` does not replay in `trs`.
InnermostReport check_innermost(const Derivation& d, const Trs& trs);

/// Positions of all U-terms of `t` in preorder.
std::vector<Position> u_term_positions(const Term& t);

/// The definition read literally: for every step i >= 1, each U-term at q <= p_i
/// also satisfies q <= p_{i-1}. U-eagerness is checked in its strict form: every
/// U-term of u_i lies at or above p_i.
StrategyReport check_almost_u_eager(const Derivation& d, const UnravelingResult& u);

/// Reorders an innermost derivation into one that is innermost and almost U-eager
/// with the same endpoints and length, by hoisting the last step of each prefix
/// above the block of steps parallel to its innermost enclosing U-term.
Derivation innermost_to_almost_u_eager(const Derivation& d, const UnravelingResult& u);

struct SoundnessWitness {
    ConditionalDerivation ctrs_derivation;
    Term final_term;
};

struct WitnessResult {
    std::optional<SoundnessWitness> witness;
    /// Set when the witness would exceed the bounds; `witness` is empty then.
    bool unknown = false;
    std::string reason;
};

/// Back-translates an almost U-eager (or innermost) derivation of U_seq(C) into
/// a derivation u_0 ->* tb(u_n) of C. The result is replayed before it is returned.
WitnessResult soundness_witness(const Derivation& d, const UnravelingResult& u, const Ctrs& ctrs,
                                const ConditionalBounds& bounds);

/// Positions in tb(t) corresponding to t|_p; empty when p runs through a
/// conditional argument or a frozen variable absent from the left-hand side.
std::vector<Position> tb_positions(const Term& t, const Position& p, const UnravelingResult& u);

}  // namespace ctrs
