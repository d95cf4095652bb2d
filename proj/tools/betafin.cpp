#include <iostream>

#include "betafin/cli.hpp"

int main(int argc, char** argv) { return betafin::cli::run(argc, argv, std::cout, std::cerr); }
