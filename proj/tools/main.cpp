#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return l0cert::cli::run(argc, argv, std::cout, std::cerr); }
