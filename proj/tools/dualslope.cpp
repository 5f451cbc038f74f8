#include <iostream>

#include "dualslope/cli/run.hpp"

int main(int argc, char** argv) { return dualslope::cli::main(argc, argv, std::cout, std::cerr); }
