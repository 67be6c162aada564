#include <iostream>

#include "ample/cli/cli.hpp"

int main(int argc, char** argv) { return ample::cli::main_entry(argc, argv, std::cout, std::cerr); }
