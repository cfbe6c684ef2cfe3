#include <iostream>

#include "enttime/cli/commands.hpp"

int main(int argc, char** argv) { return enttime::cli::run(argc, argv, std::cout, std::cerr); }
