#include <iostream>

#include "jetlag/cli/commands.hpp"

int main(int argc, char** argv) { return jetlag::run_cli(argc, argv, std::cout, std::cerr); }
