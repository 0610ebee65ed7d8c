#include "ldpower/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ldpower::cli_dispatch(args, std::cout, std::cerr);
}
