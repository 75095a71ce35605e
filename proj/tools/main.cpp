#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return aplog::cli::main(argc, argv, std::cin, std::cout, std::cerr); }
