#include <iostream>

#include "uscpol_cli/commands.hpp"

int main(int argc, char** argv) { return uscpol::cli::main_entry(argc, argv, std::cout, std::cerr); }
