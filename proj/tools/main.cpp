#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return twcli::run_cli(argc, argv, std::cout, std::cerr); }
