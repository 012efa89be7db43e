#include <iostream>

#include "medianprime/cli.hpp"

int main(int argc, char** argv) { return medianprime::cli::run(argc, argv, std::cout, std::cerr); }
