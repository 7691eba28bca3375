#include "ctrs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ctrs/certificate.hpp"
#include "ctrs/confluence.hpp"
#include "ctrs/derivations.hpp"
#include "ctrs/error.hpp"
#include "ctrs/problem.hpp"
#include "ctrs/trace.hpp"
#include "ctrs/unravel.hpp"

namespace ctrs {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::syntax_error, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::set<std::string> declared(const ProblemFile& p) { return {p.variables.begin(), p.variables.end()}; }

void cmd_check(const ProblemFile& p, const Config& cfg, bool certificate, std::ostream& out) {
    ConfluenceOptions opts{{cfg.max_depth, cfg.search_budget}, cfg.lpo_budget};
    Verdict v = check_ctrs_confluence(p.ctrs(), opts);
    out << to_string(v.answer) << '\n';
    for (const auto& line : v.trace) out << "# " << line << '\n';
    if (certificate && v.certificate) out << format_certificate(*v.certificate);
}

void cmd_unravel(const ProblemFile& p, Unraveling kind, std::ostream& out) {
    UnravelingResult u = unravel(p.ctrs(), kind);
    std::vector<std::string> vars = p.variables;
    out << "(VAR";
    for (const auto& v : vars) out << ' ' << v;
    out << ")\n(RULES\n";
    for (const auto& r : u.trs.rules()) out << "  " << to_string(r) << '\n';
    out << ")\n(COMMENT\n  unraveling " << to_string(kind) << '\n';
    for (const auto& r : u.trs.rules()) {
        const auto& prov = u.provenance_of(r.name);
        out << "  " << r.name << ": " << to_string(prov.kind);
        if (prov.kind != RuleKind::original) out << " of " << prov.source_rule;
        if (prov.kind == RuleKind::switch_rule) out << " after condition " << prov.index;
        out << '\n';
    }
    for (const auto& [name, info] : u.u_symbols) {
        out << "  " << name << ": rule " << info.rule << ", condition " << info.index << ", frozen [";
        for (std::size_t i = 0; i < info.frozen.size(); ++i) out << (i ? " " : "") << info.frozen[i];
        out << "]\n";
    }
    out << ")\n";
}

void print_steps(const std::vector<Step>& steps, std::ostream& out) {
    for (const auto& s : steps) {
        out << "STEP pos=" << to_string(s.position) << " rule=" << s.rule.name << " -> " << s.target << '\n';
    }
}

void cmd_rewrite(const ProblemFile& p, const Config& cfg, const std::string& term_text, const std::string& system,
                 Strategy strategy, std::optional<std::size_t> steps, std::ostream& out) {
    Ctrs c = p.ctrs();
    Term t = parse_term(term_text, declared(p));
    if (system == "ctrs") {
        if (strategy == Strategy::innermost) {
            throw Error(ErrorKind::precondition_violated, "innermost strategy applies to unconditional systems only");
        }
        ConditionalRewriter rw(c, {cfg.max_depth, cfg.search_budget});
        if (!steps) {
            auto set = rw.successors(t);
            for (const auto& s : set.steps) {
                out << "STEP pos=" << to_string(s.position) << " rule=" << s.rule.name << " depth=" << s.depth
                    << " -> " << s.target << '\n';
            }
            if (set.exhausted) out << "# search bounds were hit; more steps may exist\n";
            return;
        }
        ConditionalDerivation d(t);
        bool bounded = false;
        for (std::size_t i = 0; i < *steps; ++i) {
            auto set = rw.successors(d.final_term());
            bounded = bounded || set.exhausted;
            if (set.steps.empty()) break;
            d.append(set.steps.front());
        }
        out << format_conditional_derivation(d);
        auto last = rw.successors(d.final_term());
        if (last.steps.empty()) out << (last.exhausted || bounded ? "# irreducible within bounds\n" : "# normal form\n");
        else out << "# stopped after " << d.length() << " steps\n";
        return;
    }
    UnravelingResult u = unravel(c, parse_unraveling(system));
    if (!steps) {
        print_steps(successors(t, u.trs, strategy), out);
        return;
    }
    Derivation d = normalize(t, u.trs, strategy, *steps);
    out << format_trace(d);
    if (is_normal_form(d.final_term(), u.trs)) out << "# normal form " << d.final_term() << '\n';
    else out << "# stopped after " << d.length() << " steps at " << d.final_term() << '\n';
}

void cmd_verify(const ProblemFile& p, const Config& cfg, const std::string& trace_path, bool witness,
                std::ostream& out) {
    Ctrs c = p.ctrs();
    UnravelingResult u = unravel_seq(c);
    Derivation d = parse_trace(read_file(trace_path), u.trs, declared(p));
    StrategyReport report = check_almost_u_eager(d, u);
    out << format_report(report);
    if (!witness) return;
    WitnessResult w = soundness_witness(d, u, c, {cfg.max_depth, cfg.search_budget});
    if (!w.witness) {
        out << "witness: unknown (" << w.reason << ")\n";
        return;
    }
    out << "witness: " << d.initial << " ->* " << w.witness->final_term << " in " << w.witness->ctrs_derivation.length()
        << " steps\n";
    out << format_conditional_derivation(w.witness->ctrs_derivation);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Confluence analysis of deterministic conditional rewrite systems via unraveling", "ctrsconf"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--max-depth", cfg.max_depth, "Conditional rewriting depth bound")
        ->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--budget", cfg.search_budget, "Node budget per reachability or normal-form search")
        ->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--lpo-budget", cfg.lpo_budget, "Goal expansions allowed in the LPO precedence search")
        ->capture_default_str()->check(CLI::PositiveNumber);

    std::string file;
    auto add_file = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("file", file, "Problem file")->required();
    };

    auto* check = app.add_subcommand("check", "Try to prove confluence; line 1 is CONFLUENT or MAYBE");
    add_file(check);
    std::string output = "plain";
    check->add_option("--output", output, "plain or certificate")
        ->capture_default_str()->check(CLI::IsMember({"plain", "certificate"}));

    auto* unr = app.add_subcommand("unravel", "Print an unraveled TRS");
    add_file(unr);
    std::string transform = "seq";
    unr->add_option("--transform", transform, "seq, opt or sim")
        ->capture_default_str()->check(CLI::IsMember({"seq", "opt", "sim"}));

    auto* rew = app.add_subcommand("rewrite", "Show successors or a rewrite sequence of a term");
    add_file(rew);
    std::string term_text, strategy = "full", system = "seq";
    std::optional<std::size_t> steps;
    rew->add_option("--term", term_text, "Term to rewrite")->required();
    rew->add_option("--strategy", strategy, "innermost or full")
        ->capture_default_str()->check(CLI::IsMember({"innermost", "full"}));
    rew->add_option("--steps", steps, "Rewrite up to n steps instead of listing successors");
    rew->add_option("--system", system, "ctrs, seq, opt or sim")
        ->capture_default_str()->check(CLI::IsMember({"ctrs", "seq", "opt", "sim"}));

    auto* ver = app.add_subcommand("verify-derivation", "Classify a U_seq derivation and back-translate it");
    add_file(ver);
    std::string trace_path;
    bool witness = false;
    ver->add_option("--trace", trace_path, "Trace file over U_seq")->required();
    ver->add_flag("--witness", witness, "Print the back-translated derivation");

    auto* cls = app.add_subcommand("classify", "Print the syntactic classification");
    add_file(cls);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        ProblemFile p = load_problem(file);
        if (check->parsed()) cmd_check(p, cfg, output == "certificate", out);
        else if (unr->parsed()) cmd_unravel(p, parse_unraveling(transform), out);
        else if (rew->parsed()) {
            cmd_rewrite(p, cfg, term_text, system, strategy == "innermost" ? Strategy::innermost : Strategy::full,
                        steps, out);
        } else if (ver->parsed()) cmd_verify(p, cfg, trace_path, witness, out);
        else out << format_classification(classify(p.ctrs()));
        return 0;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.is_input_error() ? 1 : 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace ctrs
