#include <iostream>

#include "qxsort/cli.hpp"

int main(int argc, char** argv) { return qxsort::cli::run(argc, argv, std::cout, std::cerr); }
