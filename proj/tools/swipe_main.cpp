#include <iostream>

#include "swipe/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return swipe::cli::run(args, std::cout, std::cerr);
}
