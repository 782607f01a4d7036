#include <iostream>

#include "tag/cli/cli.hpp"

int main(int argc, char** argv) { return tag::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
