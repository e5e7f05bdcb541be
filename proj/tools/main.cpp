#include <iostream>

#include "euphony/cli.hpp"

int main(int argc, char** argv) { return euphony::run_cli(argc, argv, std::cout, std::cerr); }
