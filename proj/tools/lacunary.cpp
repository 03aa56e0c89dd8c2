#include <iostream>

#include "lacunary/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lacunary::cli::run(args, std::cout, std::cerr);
}
