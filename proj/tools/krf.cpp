#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return krf::cli::main_entry(argc, argv, std::cout, std::cerr); }
