#include "mopo_cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return mopo::cli::run(argc, argv, std::cout, std::cerr); }
