#include "ctrs/certificate.hpp"

#include <map>
#include <sstream>

#include "ctrs/error.hpp"
#include "ctrs/trace.hpp"

namespace ctrs {

namespace {

std::string rule_line(const Rule& r) { return "RULE " + r.name + " " + to_string(r); }

std::string cp_header(const CriticalPair& cp) {
    return "CP outer=" + cp.outer_rule + " inner=" + cp.inner_rule + " pos=" + to_string(cp.position);
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

}  // namespace

std::string format_certificate(const Certificate& cert) {
    std::ostringstream os;
    os << "CLASSIFICATION\n" << format_classification(cert.classification);
    os << "UNRAVELING " << to_string(cert.unraveling.kind) << '\n';
    for (const auto& r : cert.unraveling.trs.rules()) os << rule_line(r) << '\n';
    os << "PRECEDENCE\n";
    for (const auto& [f, g] : cert.precedence.generators()) os << f << " > " << g << '\n';
    os << "CP-JOINS\n";
    for (const auto& j : cert.joins) {
        os << cp_header(j.pair) << '\n';
        std::vector<std::string> vars;
        collect_variables(j.pair.peak, vars);
        os << "VARS";
        for (const auto& v : vars) os << ' ' << v;
        os << '\n';
        os << "PEAK " << j.pair.peak << '\n' << "LEFT " << j.pair.left << '\n' << "RIGHT " << j.pair.right << '\n';
        os << "JOIN-LEFT\n" << format_trace(j.left);
        os << "JOIN-RIGHT\n" << format_trace(j.right);
        os << "END-CP\n";
    }
    return os.str();
}

CertificateCheck check_certificate(std::string_view text, const Ctrs& ctrs) {
    CertificateCheck out;
    auto problem = [&](std::string what) { out.problems.push_back(std::move(what)); };
    const auto lines = split_lines(text);

    std::map<std::string, std::vector<std::string>> sections;
    std::string current;
    std::string unraveling_kind;
    for (const auto& line : lines) {
        if (line == "CLASSIFICATION" || line == "PRECEDENCE" || line == "CP-JOINS") {
            current = line;
            sections[current];
            continue;
        }
        if (line.starts_with("UNRAVELING")) {
            current = "UNRAVELING";
            sections[current];
            unraveling_kind = line.size() > 11 ? line.substr(11) : "";
            continue;
        }
        if (current.empty()) {
            if (!line.empty()) problem("text before the first section: " + line);
            continue;
        }
        sections[current].push_back(line);
    }
    for (const char* name : {"CLASSIFICATION", "UNRAVELING", "PRECEDENCE", "CP-JOINS"}) {
        if (!sections.contains(name)) problem(std::string("missing section ") + name);
    }
    if (!out.problems.empty()) return out;

    Classification c = classify(ctrs);
    if (!c.dctrs || !c.right_stable) problem("system is not a right-stable DCTRS");
    {
        std::ostringstream joined;
        for (const auto& l : sections["CLASSIFICATION"]) joined << l << '\n';
        if (joined.str() != format_classification(c)) problem("classification section does not match the system");
    }

    if (unraveling_kind != "seq") problem("unraveling must be seq, found '" + unraveling_kind + "'");
    UnravelingResult u = unravel_seq(ctrs);
    {
        std::vector<std::string> expected;
        for (const auto& r : u.trs.rules()) expected.push_back(rule_line(r));
        if (sections["UNRAVELING"] != expected) problem("unraveling section does not match U_seq of the system");
    }

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& l : sections["PRECEDENCE"]) {
        if (l.empty()) continue;
        auto gt = l.find(" > ");
        if (gt == std::string::npos) {
            problem("malformed precedence line: " + l);
            continue;
        }
        pairs.emplace_back(l.substr(0, gt), l.substr(gt + 3));
    }
    auto prec = precedence_from_pairs(pairs);
    if (!prec) {
        problem("precedence is cyclic");
    } else {
        for (const auto& r : u.trs.rules()) {
            if (!lpo_greater(r.lhs, r.rhs, *prec)) problem("LPO does not orient " + r.name + ": " + to_string(r));
        }
    }

    // Critical pair blocks keyed by header.
    struct Block {
        std::set<std::string> vars;
        std::string peak, left, right, join_left, join_right;
    };
    std::map<std::string, Block> blocks;
    {
        const auto& body = sections["CP-JOINS"];
        std::size_t i = 0;
        while (i < body.size()) {
            if (body[i].empty()) {
                ++i;
                continue;
            }
            if (!body[i].starts_with("CP ")) {
                problem("expected CP block, found: " + body[i]);
                break;
            }
            std::string header = body[i++];
            Block b;
            std::string* target = nullptr;
            bool closed = false;
            for (; i < body.size(); ++i) {
                const auto& l = body[i];
                if (l == "END-CP") {
                    closed = true;
                    ++i;
                    break;
                }
                if (l.starts_with("VARS")) {
                    std::istringstream vs(l.substr(4));
                    std::string v;
                    while (vs >> v) b.vars.insert(v);
                } else if (l.starts_with("PEAK ")) {
                    b.peak = l.substr(5);
                } else if (l.starts_with("LEFT ")) {
                    b.left = l.substr(5);
                } else if (l.starts_with("RIGHT ")) {
                    b.right = l.substr(6);
                } else if (l == "JOIN-LEFT") {
                    target = &b.join_left;
                } else if (l == "JOIN-RIGHT") {
                    target = &b.join_right;
                } else if (target) {
                    *target += l + "\n";
                } else {
                    problem("unexpected line in " + header + ": " + l);
                }
            }
            if (!closed) problem(header + " is not terminated by END-CP");
            if (!blocks.emplace(header, std::move(b)).second) problem("duplicate block " + header);
        }
    }

    auto cps = critical_pairs(u.trs);
    if (cps.size() != blocks.size()) {
        problem("certificate joins " + std::to_string(blocks.size()) + " critical pairs, the system has "
                + std::to_string(cps.size()));
    }
    for (const auto& cp : cps) {
        auto it = blocks.find(cp_header(cp));
        if (it == blocks.end()) {
            problem("no join for critical pair " + to_string(cp));
            continue;
        }
        const Block& b = it->second;
        if (b.peak != to_string(cp.peak) || b.left != to_string(cp.left) || b.right != to_string(cp.right)) {
            problem("critical pair " + cp_header(cp) + " does not match the recomputed pair");
            continue;
        }
        try {
            Derivation l = parse_trace(b.join_left, u.trs, b.vars);
            Derivation r = parse_trace(b.join_right, u.trs, b.vars);
            if (!(l.initial == cp.left) || !(r.initial == cp.right)) {
                problem("joins of " + cp_header(cp) + " do not start at the pair");
            } else if (!(l.final_term() == r.final_term())) {
                problem("joins of " + cp_header(cp) + " end at " + to_string(l.final_term()) + " and "
                        + to_string(r.final_term()));
            }
        } catch (const Error& e) {
            problem("join of " + cp_header(cp) + " does not replay: " + e.what());
        }
    }
    out.valid = out.problems.empty();
    return out;
}

}  // namespace ctrs
