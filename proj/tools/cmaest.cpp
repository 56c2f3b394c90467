#include <iostream>

#include "cmaest/cli.hpp"

int main(int argc, char** argv) { return cmaest::cli::run(argc, argv, std::cout, std::cerr); }
