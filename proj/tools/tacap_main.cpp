// Entry point: hand argv to the in-process command driver.
#include <iostream>
#include <string>
#include <vector>

#include "tacap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tacap::run_cli(args, std::cout, std::cerr);
}
