#include <iostream>

#include "bpc/cli.hpp"

int main(int argc, char** argv) { return bpc::run_cli(argc, argv, std::cout, std::cerr); }
