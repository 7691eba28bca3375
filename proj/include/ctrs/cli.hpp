#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctrs {

struct Config {
    std::size_t max_depth = 10;
    std::size_t search_budget = 10000;
    std::size_t lpo_budget = 100000;
};

/// Runs one subcommand. `args` excludes the program name. Returns 0 when an
/// answer was produced, 1 on input errors and 2 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctrs
