#include <iostream>

#include "bosonic/cli.hpp"

int main(int argc, char** argv) { return bosonic::run_cli(argc, argv, std::cout, std::cerr); }
