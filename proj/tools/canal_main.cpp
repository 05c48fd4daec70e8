#include <iostream>

#include "canal/cli.hpp"

int main(int argc, char** argv) { return canal::cli::main(argc, argv, std::cout, std::cerr); }
