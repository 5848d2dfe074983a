#include <iostream>

#include "smq/commands.hpp"

int main(int argc, char** argv) { return smq::cli::run(argc, argv, std::cout, std::cerr); }
