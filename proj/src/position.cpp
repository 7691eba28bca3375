#include "ctrs/position.hpp"

#include <charconv>

#include "ctrs/error.hpp"

namespace ctrs {

Position::Position(std::initializer_list<std::size_t> path) : path_(path) {}
Position::Position(std::vector<std::size_t> path) : path_(std::move(path)) {}

Position Position::child(std::size_t index) const {
    auto p = path_;
    p.push_back(index);
    return Position(std::move(p));
}

Position Position::concat(const Position& suffix) const {
    auto p = path_;
    p.insert(p.end(), suffix.path_.begin(), suffix.path_.end());
    return Position(std::move(p));
}

Position Position::suffix(std::size_t n) const {
    if (n > path_.size()) throw Error(ErrorKind::invalid_position, "suffix beyond position length");
    return Position(std::vector<std::size_t>(path_.begin() + static_cast<std::ptrdiff_t>(n), path_.end()));
}

Position Position::prefix(std::size_t n) const {
    if (n > path_.size()) throw Error(ErrorKind::invalid_position, "prefix beyond position length");
    return Position(std::vector<std::size_t>(path_.begin(), path_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool Position::above_or_equal(const Position& q) const noexcept {
    if (path_.size() > q.path_.size()) return false;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (path_[i] != q.path_[i]) return false;
    }
    return true;
}

bool Position::strictly_above(const Position& q) const noexcept {
    return path_.size() < q.path_.size() && above_or_equal(q);
}

bool Position::parallel(const Position& q) const noexcept {
    return !above_or_equal(q) && !q.above_or_equal(*this);
}

std::string to_string(const Position& p) {
    std::string out;
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i > 0) out += '.';
        out += std::to_string(p[i]);
    }
    return out;
}

Position parse_position(std::string_view text) {
    std::vector<std::size_t> path;
    if (text.empty()) return Position();
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('.', start);
        if (end == std::string_view::npos) end = text.size();
        auto part = text.substr(start, end - start);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc() || ptr != part.data() + part.size() || value == 0) {
            throw Error(ErrorKind::syntax_error, "bad position '" + std::string(text) + "'");
        }
        path.push_back(value);
        start = end + 1;
    }
    return Position(std::move(path));
}

bool is_valid_position(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (std::size_t idx : p.path()) {
        if (cur->is_var() || idx == 0 || idx > cur->arity()) return false;
        cur = &cur->args()[idx - 1];
    }
    return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (std::size_t idx : p.path()) {
        if (cur->is_var() || idx == 0 || idx > cur->arity()) {
            throw Error(ErrorKind::invalid_position, to_string(p) + " in " + to_string(t));
        }
        cur = &cur->args()[idx - 1];
    }
    return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t depth, const Term& s) {
    if (depth == p.length()) return s;
    std::size_t idx = p[depth];
    if (t.is_var() || idx == 0 || idx > t.arity()) {
        throw Error(ErrorKind::invalid_position, to_string(p) + " in " + to_string(t));
    }
    std::vector<Term> args(t.args().begin(), t.args().end());
    args[idx - 1] = replace_from(args[idx - 1], p, depth + 1, s);
    return Term::app(t.name(), std::move(args));
}

void collect_positions(const Term& t, std::vector<std::size_t>& path, std::vector<Position>& out) {
    out.emplace_back(path);
    if (t.is_var()) return;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i + 1);
        collect_positions(t.args()[i], path, out);
        path.pop_back();
    }
}

void collect_var_positions(const Term& t, const std::string& var, std::vector<std::size_t>& path,
                           std::vector<Position>& out) {
    if (t.is_var()) {
        if (t.name() == var) out.emplace_back(path);
        return;
    }
    if (t.is_ground()) return;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        path.push_back(i + 1);
        collect_var_positions(t.args()[i], var, path, out);
        path.pop_back();
    }
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
    return replace_from(t, p, 0, replacement);
}

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    std::vector<std::size_t> path;
    collect_positions(t, path, out);
    return out;
}

std::vector<Position> variable_positions(const Term& t, const std::string& var) {
    std::vector<Position> out;
    std::vector<std::size_t> path;
    collect_var_positions(t, var, path, out);
    return out;
}

}  // namespace ctrs
