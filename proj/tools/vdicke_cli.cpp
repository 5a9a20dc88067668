#include <iostream>

#include "vdicke/cli.hpp"

int main(int argc, char** argv) { return vdicke::cli::run(argc, argv, std::cout, std::cerr); }
