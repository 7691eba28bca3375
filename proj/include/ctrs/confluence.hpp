#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctrs/conditional.hpp"
#include "ctrs/critical_pairs.hpp"
#include "ctrs/derivations.hpp"
#include "ctrs/lpo.hpp"
#include "ctrs/unravel.hpp"

namespace ctrs {

struct TrsJoinResult {
    Decision answer = Decision::unknown;
    std::optional<Term> common_reduct;
    std::optional<Derivation> left;
    std::optional<Derivation> right;
};

/// Searches the reducts of both terms. With `terminating` set the reduct sets are
/// finite, so a budget hit is the only source of `unknown`.
TrsJoinResult joinable_trs(const Term& u, const Term& v, const Trs& trs, bool terminating,
                           std::size_t budget = 10000);

struct CriticalPairJoin {
    CriticalPair pair;
    Derivation left;
    Derivation right;
};

struct LocalConfluenceResult {
    Decision answer = Decision::unknown;
    std::vector<CriticalPairJoin> joins;
    std::optional<CriticalPair> counterexample;
};

/// Newman's lemma: joins every critical pair. Throws precedence-invalid if `prec`
/// does not orient all rules.
LocalConfluenceResult confluent_terminating(const Trs& trs, const Precedence& prec, std::size_t budget = 10000);

struct Certificate {
    Classification classification;
    UnravelingResult unraveling;
    Precedence precedence;
    std::vector<CriticalPairJoin> joins;
};

enum class Answer { confluent, maybe };

std::string_view to_string(Answer a);

struct Verdict {
    Answer answer = Answer::maybe;
    std::optional<Certificate> certificate;
    std::vector<std::string> trace;
};

struct ConfluenceOptions {
    ConditionalBounds bounds;
    std::size_t lpo_budget = 100000;
};

Verdict check_ctrs_confluence(const Ctrs& ctrs, const ConfluenceOptions& options = {});

struct JoinabilityWitness {
    Term common;
    ConditionalDerivation left;
    ConditionalDerivation right;
};

/// Normalizes both terms innermost in U_seq(C) and back-translates the two
/// normalizing derivations. Throws not-joinable if the normal forms differ and
/// witness-exceeded-bounds if a witness would exceed `bounds`.
JoinabilityWitness sound_joinability_witness(const Term& u, const Term& v, const Ctrs& ctrs, const Certificate& cert,
                                             const ConditionalBounds& bounds);

}  // namespace ctrs
