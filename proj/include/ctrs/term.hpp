#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctrs {

enum class SymbolKind { original, u_symbol };

/// Function symbols whose name starts with this prefix are U-symbols.
inline constexpr std::string_view reserved_prefix = "U_";

/// Classification of a symbol name. Being a U-symbol is purely syntactic.
SymbolKind kind_of_symbol(std::string_view name);

struct Symbol {
    std::string name;
    std::size_t arity = 0;
    SymbolKind kind = SymbolKind::original;

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// Immutable first-order term: a variable or a function symbol applied to
/// arguments. Copies share structure.
class Term {
public:
    static Term var(std::string name);
    static Term app(std::string name, std::vector<Term> args = {});

    bool is_var() const noexcept;
    bool is_app() const noexcept { return !is_var(); }
    const std::string& name() const noexcept;
    std::size_t arity() const noexcept;
    std::span<const Term> args() const noexcept;
    /// 0-based argument access.
    const Term& arg(std::size_t i) const;
    Symbol symbol() const;

    std::size_t hash() const noexcept;
    /// Number of nodes.
    std::size_t size() const noexcept;
    bool is_ground() const noexcept;
    /// True if a U-symbol occurs anywhere in the term.
    bool has_u_symbol() const noexcept;
    bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

    friend bool operator==(const Term& a, const Term& b) noexcept;
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

/// Variables of a term in order of first occurrence (left-to-right, preorder).
std::vector<std::string> variables(const Term& t);
/// Appends the variables of `t` not yet in `out`, keeping first-occurrence order.
void collect_variables(const Term& t, std::vector<std::string>& out);
std::set<std::string> variable_set(const Term& t);
bool occurs(const std::string& var, const Term& t);
/// Each variable occurs at most once.
bool is_linear(const Term& t);
std::set<Symbol> symbols(const Term& t);

/// Parses `name(t1,...,tk)` syntax. Identifiers contained in `variables` are
/// variables, everything else is a function symbol.
Term parse_term(std::string_view text, const std::set<std::string>& variables);

}  // namespace ctrs

template <>
struct std::hash<ctrs::Term> {
    std::size_t operator()(const ctrs::Term& t) const noexcept { return t.hash(); }
};
