#include <iostream>

#include "curvgraph/cli.hpp"

int main(int argc, char** argv) { return curvgraph::run(argc, argv, std::cout, std::cerr); }
