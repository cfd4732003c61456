#include <iostream>

#include "wva/cli.hpp"

int main(int argc, char** argv) { return wva::cli::run_cli(argc, argv, std::cout, std::cerr); }
