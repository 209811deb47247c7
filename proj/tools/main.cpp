#include <clocale>
#include <iostream>
#include <string>
#include <vector>

#include "tscalc/cli.hpp"

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    std::vector<std::string> args(argv + 1, argv + argc);
    return tscalc::run_cli(args, std::cout, std::cerr);
}
