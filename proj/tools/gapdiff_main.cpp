#include <iostream>

#include "gapdiff/cli.hpp"

int main(int argc, char** argv) { return gapdiff::cli::main_entry(argc, argv, std::cout, std::cerr); }
