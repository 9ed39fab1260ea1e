#include <iostream>

#include "synchrony/cli/commands.hpp"

int main(int argc, char** argv) { return synchrony::cli::run(argc, argv, std::cout, std::cerr); }
