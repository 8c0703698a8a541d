#include "tpsd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tpsd::run_cli(argc, argv, std::cout, std::cerr); }
