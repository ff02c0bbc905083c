#include <iostream>

#include "valshare/cli.hpp"

int main(int argc, char** argv) { return valshare::run_cli(argc, argv, std::cout, std::cerr); }
