#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return greedy_morse::cli::run(argc, argv, std::cout, std::cerr); }
