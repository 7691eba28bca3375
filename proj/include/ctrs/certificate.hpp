#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctrs/confluence.hpp"

namespace ctrs {

/// Text form with sections CLASSIFICATION, UNRAVELING, PRECEDENCE and CP-JOINS.
/// Each critical pair block lists its variables, the pair, and two traces.
std::string format_certificate(const Certificate& cert);

struct CertificateCheck {
    bool valid = false;
    std::vector<std::string> problems;
};

/// Replays a certificate against `ctrs` without trusting anything in it:
/// recomputes the classification, the unraveling and the critical pairs,
/// re-verifies every rule with `lpo_greater`, and replays both joins of each pair.
CertificateCheck check_certificate(std::string_view text, const Ctrs& ctrs);

}  // namespace ctrs
