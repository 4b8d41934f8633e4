#include "aniso/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return aniso::cli::run(argc, argv, std::cout, std::cerr); }
