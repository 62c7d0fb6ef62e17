#include <iostream>
#include <string>
#include <vector>

#include "cfcolor/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cfcolor::run_cli(args, std::cout, std::cerr);
}
