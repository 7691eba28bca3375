#include "ctrs/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ctrs/error.hpp"

namespace ctrs {

namespace {

enum class Tok { open, close, comma, arrow, equals, bar, ident, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        Token t{Tok::end, "", line_, col_};
        if (pos_ >= text_.size()) return t;
        char c = text_[pos_];
        auto single = [&](Tok k) {
            t.kind = k;
            t.text = std::string(1, c);
            advance(1);
            return t;
        };
        if (c == '(') return single(Tok::open);
        if (c == ')') return single(Tok::close);
        if (c == ',') return single(Tok::comma);
        if (c == '|') return single(Tok::bar);
        if (text_.substr(pos_, 2) == "->") {
            advance(2);
            return {Tok::arrow, "->", t.line, t.column};
        }
        if (text_.substr(pos_, 2) == "==") {
            advance(2);
            return {Tok::equals, "==", t.line, t.column};
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !boundary()) advance(1);
        t.kind = Tok::ident;
        t.text = std::string(text_.substr(start, pos_ - start));
        return t;
    }

    /// Raw text up to the parenthesis closing the current group; consumes it.
    std::string raw_group(const Token& opened) {
        int depth = 1;
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) {
                std::string body(text_.substr(start, pos_ - start));
                advance(1);
                return body;
            }
            advance(1);
        }
        throw Error(ErrorKind::syntax_error, "line " + std::to_string(opened.line) + ", column "
                                                 + std::to_string(opened.column) + ": unterminated group");
    }

private:
    bool boundary() const {
        char c = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' || c == '|') return true;
        auto two = text_.substr(pos_, 2);
        return two == "->" || two == "==";
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

[[noreturn]] void fail(ErrorKind kind, const Token& at, const std::string& what) {
    throw Error(kind, "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " + what);
}

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

    ProblemFile parse() {
        ProblemFile out;
        bool seen_rules = false;
        while (tok_.kind != Tok::end) {
            Token opened = expect(Tok::open, "'('");
            if (tok_.kind != Tok::ident) fail(ErrorKind::syntax_error, tok_, "expected a section name");
            std::string section = tok_.text;
            if (section == "COMMENT") {
                out.comments.push_back(trim(lex_.raw_group(opened)));
                tok_ = lex_.next();
                continue;
            }
            Token name = tok_;
            advance();
            if (section == "CONDITIONTYPE") {
                if (tok_.kind != Tok::ident) fail(ErrorKind::syntax_error, tok_, "expected a condition type");
                if (tok_.text != "ORIENTED") {
                    fail(ErrorKind::unsupported_condition_type, tok_,
                         "condition type " + tok_.text + " is not supported, only ORIENTED");
                }
                out.condition_type = tok_.text;
                advance();
            } else if (section == "VAR") {
                if (seen_rules) fail(ErrorKind::syntax_error, name, "VAR must precede RULES");
                while (tok_.kind == Tok::ident) {
                    check_reserved(tok_);
                    if (std::find(out.variables.begin(), out.variables.end(), tok_.text) == out.variables.end()) {
                        out.variables.push_back(tok_.text);
                    }
                    advance();
                }
                vars_.insert(out.variables.begin(), out.variables.end());
            } else if (section == "RULES") {
                seen_rules = true;
                while (tok_.kind != Tok::close && tok_.kind != Tok::end) {
                    out.rules.push_back(rule(out.rules.size() + 1));
                }
            } else {
                fail(ErrorKind::syntax_error, name, "unknown section " + section);
            }
            expect(Tok::close, "')'");
        }
        // Oriented is the only supported reading, so a missing declaration defaults to it.
        bool conditional = std::any_of(out.rules.begin(), out.rules.end(),
                                       [](const ConditionalRule& r) { return !r.is_unconditional(); });
        if (conditional && out.condition_type.empty()) out.condition_type = "ORIENTED";
        check_arities(out);
        for (const auto& r : out.rules) check_undeclared(r);
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    void advance() { tok_ = lex_.next(); }

    Token expect(Tok kind, const std::string& what) {
        if (tok_.kind != kind) {
            fail(ErrorKind::syntax_error, tok_,
                 "expected " + what + ", found " + (tok_.kind == Tok::end ? "end of input" : "'" + tok_.text + "'"));
        }
        Token t = tok_;
        advance();
        return t;
    }

    static void check_reserved(const Token& t) {
        if (kind_of_symbol(t.text) == SymbolKind::u_symbol) {
            fail(ErrorKind::reserved_prefix, t, "'" + t.text + "' uses the reserved prefix " + std::string(reserved_prefix));
        }
    }

    Term term() {
        if (tok_.kind != Tok::ident) fail(ErrorKind::syntax_error, tok_, "expected a term");
        Token head = tok_;
        check_reserved(head);
        advance();
        if (tok_.kind != Tok::open) {
            if (vars_.contains(head.text)) return Term::var(head.text);
            return Term::app(head.text);
        }
        if (vars_.contains(head.text)) fail(ErrorKind::syntax_error, head, "variable " + head.text + " applied to arguments");
        advance();
        std::vector<Term> args;
        if (tok_.kind != Tok::close) {
            args.push_back(term());
            while (tok_.kind == Tok::comma) {
                advance();
                args.push_back(term());
            }
        }
        expect(Tok::close, "')'");
        positions_.emplace(head.text, head);
        return Term::app(head.text, std::move(args));
    }

    ConditionalRule rule(std::size_t number) {
        Token start = tok_;
        ConditionalRule r{"r" + std::to_string(number), term(), Term::var("_"), {}};
        expect(Tok::arrow, "'->'");
        r.rhs = term();
        if (tok_.kind == Tok::bar) {
            advance();
            do {
                if (!r.conditions.empty()) advance();
                Term s = term();
                expect(Tok::equals, "'=='");
                r.conditions.push_back({std::move(s), term()});
            } while (tok_.kind == Tok::comma);
        }
        if (r.lhs.is_var()) fail(ErrorKind::syntax_error, start, "left-hand side is a variable");
        return r;
    }

    void check_arities(const ProblemFile& p) {
        std::map<std::string, std::size_t> arity;
        auto visit = [&](const Term& t) {
            for (const auto& s : symbols(t)) {
                auto [it, fresh] = arity.emplace(s.name, s.arity);
                if (!fresh && it->second != s.arity) {
                    auto at = positions_.find(s.name);
                    std::string what = "symbol " + s.name + " used with arities " + std::to_string(it->second)
                                       + " and " + std::to_string(s.arity);
                    if (at != positions_.end()) fail(ErrorKind::syntax_error, at->second, what);
                    throw Error(ErrorKind::syntax_error, what);
                }
            }
        };
        for (const auto& r : p.rules) {
            visit(r.lhs);
            visit(r.rhs);
            for (const auto& c : r.conditions) {
                visit(c.source);
                visit(c.target);
            }
        }
    }

    // Undeclared names parse as constants. A constant that is introduced by a
    // condition target and then consumed like a bound variable is almost
    // certainly a missing VAR entry.
    static void check_undeclared(const ConditionalRule& r) {
        auto constants = [](const Term& t) {
            std::set<std::string> out;
            for (const auto& s : symbols(t)) {
                if (s.arity == 0) out.insert(s.name);
            }
            return out;
        };
        auto in_lhs = constants(r.lhs);
        for (std::size_t i = 0; i < r.conditions.size(); ++i) {
            for (const auto& c : constants(r.conditions[i].target)) {
                if (in_lhs.contains(c)) continue;
                bool used_later = constants(r.rhs).contains(c);
                for (std::size_t j = i + 1; j < r.conditions.size() && !used_later; ++j) {
                    used_later = constants(r.conditions[j].source).contains(c);
                }
                if (used_later && !constants(r.conditions[i].source).contains(c)) {
                    throw Error(ErrorKind::undeclared_variable,
                                "rule " + r.name + " (" + to_string(r) + "): '" + c
                                    + "' is bound by a condition and used afterwards but not declared in VAR");
                }
            }
        }
    }

    Lexer lex_;
    Token tok_;
    std::set<std::string> vars_;
    std::map<std::string, Token> positions_;
};

}  // namespace

ProblemFile parse_problem(std::string_view text) { return Parser(text).parse(); }

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::syntax_error, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string format_problem(const ProblemFile& p) {
    std::ostringstream os;
    if (!p.condition_type.empty()) os << "(CONDITIONTYPE " << p.condition_type << ")\n";
    os << "(VAR";
    for (const auto& v : p.variables) os << ' ' << v;
    os << ")\n(RULES\n";
    for (const auto& r : p.rules) os << "  " << to_string(r) << '\n';
    os << ")\n";
    for (const auto& c : p.comments) os << "(COMMENT " << c << ")\n";
    return os.str();
}

}  // namespace ctrs
