#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return scidtb::cli::run(argc, argv, std::cout, std::cerr); }
