#include "cusplab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cusplab::run(argc, argv, std::cout, std::cerr); }
