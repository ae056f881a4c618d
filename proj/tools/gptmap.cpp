#include "gptmap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gptmap::cli::run(argc, argv, std::cout, std::cerr); }
