#include <iostream>

#include "greensign/cli.hpp"

int main(int argc, char** argv) { return greensign::cli::run(argc, argv, std::cout, std::cerr); }
