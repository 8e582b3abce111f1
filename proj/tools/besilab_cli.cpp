#include <iostream>

#include "besilab/cli.hpp"

int main(int argc, char** argv) { return besilab::cli::main(argc, argv, std::cout, std::cerr); }
