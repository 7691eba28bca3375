#include <iostream>
#include <string>
#include <vector>

#include "ctrs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ctrs::run(args, std::cout, std::cerr);
}
