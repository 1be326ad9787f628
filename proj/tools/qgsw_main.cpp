#include <iostream>

#include "qgsw/cli.hpp"

int main(int argc, char** argv) { return qgsw::cli::main(argc, argv, std::cout, std::cerr); }
