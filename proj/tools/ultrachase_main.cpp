#include "ultrachase/cli.hpp"

#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ultrachase::cli::main_entry(args, std::cout, std::cerr);
}
