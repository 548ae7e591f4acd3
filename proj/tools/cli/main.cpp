#include <iostream>

#include "schur_cli/commands.hpp"

int main(int argc, char** argv) { return schur::cli::main_entry(argc, argv, std::cout, std::cerr); }
