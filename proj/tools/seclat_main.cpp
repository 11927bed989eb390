#include <iostream>

#include "seclat/cli.hpp"

int main(int argc, char** argv) { return seclat::run_cli(argc, argv, std::cout, std::cerr); }
