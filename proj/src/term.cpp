#include "ctrs/term.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "ctrs/error.hpp"

namespace ctrs {

SymbolKind kind_of_symbol(std::string_view name) {
    return name.starts_with(reserved_prefix) ? SymbolKind::u_symbol : SymbolKind::original;
}

struct Term::Node {
    bool is_var = false;
    std::string name;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 1;
    bool ground = true;
    bool has_u = false;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::string name) {
    auto node = std::make_shared<Node>();
    node->is_var = true;
    node->hash = mix(0x51ed270b27a1f3c5ULL, std::hash<std::string>{}(name));
    node->name = std::move(name);
    node->ground = false;
    return Term(std::move(node));
}

Term Term::app(std::string name, std::vector<Term> args) {
    auto node = std::make_shared<Node>();
    std::size_t h = std::hash<std::string>{}(name);
    h = mix(h, args.size());
    node->has_u = kind_of_symbol(name) == SymbolKind::u_symbol;
    for (const auto& a : args) {
        h = mix(h, a.hash());
        node->size += a.size();
        node->ground = node->ground && a.is_ground();
        node->has_u = node->has_u || a.has_u_symbol();
    }
    node->hash = h;
    node->name = std::move(name);
    node->args = std::move(args);
    return Term(std::move(node));
}

bool Term::is_var() const noexcept { return node_->is_var; }
const std::string& Term::name() const noexcept { return node_->name; }
std::size_t Term::arity() const noexcept { return node_->args.size(); }
std::span<const Term> Term::args() const noexcept { return node_->args; }

const Term& Term::arg(std::size_t i) const {
    if (i >= node_->args.size()) {
        throw Error(ErrorKind::invalid_position,
                    "argument " + std::to_string(i + 1) + " of " + to_string(*this));
    }
    return node_->args[i];
}

Symbol Term::symbol() const { return Symbol{name(), arity(), kind_of_symbol(name())}; }

std::size_t Term::hash() const noexcept { return node_->hash; }
std::size_t Term::size() const noexcept { return node_->size; }
bool Term::is_ground() const noexcept { return node_->ground; }
bool Term::has_u_symbol() const noexcept { return node_->has_u; }

bool operator==(const Term& a, const Term& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    if (a.is_var() != b.is_var() || a.name() != b.name() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!(a.node_->args[i] == b.node_->args[i])) return false;
    }
    return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    // Variables sort before applications.
    if (a.is_var() != b.is_var()) {
        return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = a.name() <=> b.name(); c != 0) return c;
    if (auto c = a.arity() <=> b.arity(); c != 0) return c;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (auto c = a.node_->args[i] <=> b.node_->args[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

namespace {

void print(std::ostream& os, const Term& t) {
    os << t.name();
    if (t.is_var() || t.arity() == 0) return;
    os << '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i > 0) os << ',';
        print(os, t.args()[i]);
    }
    os << ')';
}

}  // namespace

std::string to_string(const Term& t) {
    std::ostringstream os;
    print(os, t);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
    print(os, t);
    return os;
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
    if (t.is_ground()) return;
    if (t.is_var()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        return;
    }
    for (const auto& a : t.args()) collect_variables(a, out);
}

std::vector<std::string> variables(const Term& t) {
    std::vector<std::string> out;
    collect_variables(t, out);
    return out;
}

std::set<std::string> variable_set(const Term& t) {
    auto vs = variables(t);
    return {vs.begin(), vs.end()};
}

bool occurs(const std::string& var, const Term& t) {
    if (t.is_ground()) return false;
    if (t.is_var()) return t.name() == var;
    return std::any_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return occurs(var, a); });
}

namespace {

bool linear_into(const Term& t, std::set<std::string>& seen) {
    if (t.is_var()) return seen.insert(t.name()).second;
    for (const auto& a : t.args()) {
        if (!linear_into(a, seen)) return false;
    }
    return true;
}

void collect_symbols(const Term& t, std::set<Symbol>& out) {
    if (t.is_var()) return;
    out.insert(t.symbol());
    for (const auto& a : t.args()) collect_symbols(a, out);
}

}  // namespace

bool is_linear(const Term& t) {
    std::set<std::string> seen;
    return linear_into(t, seen);
}

std::set<Symbol> symbols(const Term& t) {
    std::set<Symbol> out;
    collect_symbols(t, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TermParser {
public:
    TermParser(std::string_view text, const std::set<std::string>& vars) : text_(text), vars_(vars) {}

    Term parse_all() {
        Term t = parse();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return t;
    }

private:
    static bool is_ident_char(char c) {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ','
               && c != '|';
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::syntax_error,
                    what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
            if (text_.substr(pos_, 2) == "->" || text_.substr(pos_, 2) == "==") break;
            ++pos_;
        }
        if (pos_ == start) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    Term parse() {
        std::string name = ident();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            if (vars_.contains(name)) fail("variable '" + name + "' applied to arguments");
            ++pos_;
            std::vector<Term> args;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ')') {
                ++pos_;
                return Term::app(std::move(name), {});
            }
            for (;;) {
                args.push_back(parse());
                skip_ws();
                if (pos_ >= text_.size()) fail("unterminated argument list");
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (text_[pos_] == ')') {
                    ++pos_;
                    break;
                }
                fail("expected ',' or ')'");
            }
            return Term::app(std::move(name), std::move(args));
        }
        if (vars_.contains(name)) return Term::var(std::move(name));
        return Term::app(std::move(name), {});
    }

    std::string_view text_;
    const std::set<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const std::set<std::string>& variables) {
    return TermParser(text, variables).parse_all();
}

}  // namespace ctrs
