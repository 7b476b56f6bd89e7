#include <iostream>

#include "monofan/cli.hpp"

int main(int argc, char** argv) { return monofan::cli::run(argc, argv, std::cout, std::cerr); }
