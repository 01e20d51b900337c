#include <iostream>

#include "commscale_cli/cli.hpp"

int main(int argc, char** argv) { return commscale::cli::run(argc, argv, std::cout, std::cerr); }
