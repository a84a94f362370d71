#include <iostream>

#include "kgforge/cli/commands.hpp"

int main(int argc, char** argv) { return kgforge::cli::run(argc, argv, std::cout, std::cerr); }
