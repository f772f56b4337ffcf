#include <iostream>

#include "aszeta/cli.hpp"

int main(int argc, char** argv) { return aszeta::cli::run(argc, argv, std::cout, std::cerr); }
