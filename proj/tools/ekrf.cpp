#include <iostream>
#include <string>
#include <vector>

#include "ekrf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ekrf::run_cli(args, std::cout, std::cerr);
}
