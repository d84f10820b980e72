#include <iostream>

#include "ctcx/cli.hpp"

int main(int argc, char** argv) { return ctcx::cli::main_entry(argc, argv, std::cout, std::cerr); }
