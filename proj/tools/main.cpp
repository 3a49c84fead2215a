#include <iostream>

#include "eisheat/cli.hpp"

int main(int argc, char** argv) { return eis::cli::run(argc, argv, std::cout, std::cerr); }
