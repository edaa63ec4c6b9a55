#include "skewstab/cli/run.hpp"

#include <iostream>

int main(int argc, char** argv) { return skewstab::cli::run(argc, argv, std::cout, std::cerr); }
