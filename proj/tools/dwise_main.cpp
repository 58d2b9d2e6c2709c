#include <iostream>

#include "dwise/cli.hpp"

int main(int argc, char** argv) { return dwise::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
