#include <iostream>

#include "sonoqed/cli.hpp"

int main(int argc, char** argv) { return sonoqed::run_cli(argc, argv, std::cout, std::cerr); }
