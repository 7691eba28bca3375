#include "ctrs/trace.hpp"

#include <sstream>

#include "ctrs/error.hpp"

namespace ctrs {

std::string format_trace(const Derivation& d) {
    std::ostringstream os;
    os << "TERM " << d.initial << '\n';
    for (const auto& s : d.steps) os << "STEP pos=" << to_string(s.position) << " rule=" << s.rule.name << '\n';
    return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Derivation parse_trace(std::string_view text, const Trs& trs, const std::set<std::string>& variables) {
    std::optional<Derivation> d;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        auto fail = [&](const std::string& what) {
            throw Error(ErrorKind::syntax_error, "trace line " + std::to_string(line_no) + ": " + what);
        };
        if (line.starts_with("TERM ")) {
            if (d) fail("duplicate TERM line");
            d.emplace(parse_term(trim(line.substr(5)), variables));
            continue;
        }
        if (!line.starts_with("STEP ")) fail("expected TERM or STEP");
        if (!d) fail("STEP before TERM");
        std::istringstream fields{std::string(line.substr(5))};
        std::string field;
        std::optional<Position> pos;
        std::optional<std::string> rule;
        while (fields >> field) {
            if (field.starts_with("pos=")) {
                pos = parse_position(field.substr(4));
            } else if (field.starts_with("rule=")) {
                rule = field.substr(5);
            } else {
                fail("unknown field '" + field + "'");
            }
        }
        if (!pos || !rule || rule->empty()) fail("STEP needs pos= and rule=");
        const Rule* r = trs.find(*rule);
        if (!r) {
            throw Error(ErrorKind::invalid_derivation,
                        "trace line " + std::to_string(line_no) + ": unknown rule " + *rule);
        }
        try {
            d->append(apply_rule_at(d->final_term(), *pos, *r));
        } catch (const Error& e) {
            throw Error(ErrorKind::invalid_derivation, "trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!d) throw Error(ErrorKind::syntax_error, "trace has no TERM line");
    return *d;
}

}  // namespace ctrs
