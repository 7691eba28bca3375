#pragma once

#include <cstddef>
#include <compare>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "ctrs/term.hpp"

namespace ctrs {

/// Path of 1-based child indices; the empty path is the root.
class Position {
public:
    Position() = default;
    Position(std::initializer_list<std::size_t> path);
    explicit Position(std::vector<std::size_t> path);

    static Position root() { return Position(); }

    bool is_root() const noexcept { return path_.empty(); }
    std::size_t length() const noexcept { return path_.size(); }
    const std::vector<std::size_t>& path() const noexcept { return path_; }
    std::size_t operator[](std::size_t i) const { return path_.at(i); }

    Position child(std::size_t index) const;
    Position concat(const Position& suffix) const;
    /// Drops the first `n` indices.
    Position suffix(std::size_t n) const;
    Position prefix(std::size_t n) const;

    /// p <= q: q is below (or equal to) p, i.e. p is a prefix of q.
    bool above_or_equal(const Position& q) const noexcept;
    bool strictly_above(const Position& q) const noexcept;
    bool parallel(const Position& q) const noexcept;

    friend bool operator==(const Position&, const Position&) = default;
    /// Lexicographic order; a prefix sorts first (leftmost-outermost).
    friend auto operator<=>(const Position&, const Position&) = default;

private:
    std::vector<std::size_t> path_;
};

/// Dot-joined indices, root is the empty string.
std::string to_string(const Position& p);
Position parse_position(std::string_view text);

bool is_valid_position(const Term& t, const Position& p);
/// Throws invalid-position if `p` is not a position of `t`.
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

/// All positions of `t` in preorder (leftmost-outermost first).
std::vector<Position> positions(const Term& t);
/// Positions of `t` at which the variable `var` occurs.
std::vector<Position> variable_positions(const Term& t, const std::string& var);

}  // namespace ctrs
