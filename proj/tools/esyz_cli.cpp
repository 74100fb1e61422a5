#include <iostream>

#include "esyz/cli.hpp"

int main(int argc, char** argv) { return esyz::cli::run(argc, argv, std::cout, std::cerr); }
