#include "convexity/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return convexity::cli::run_cli(argc, argv, std::cout, std::cerr);
}
