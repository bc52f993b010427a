#include <iostream>

#include "crowdkit/cli.hpp"

int main(int argc, char** argv) { return crowdkit::cli::run(argc, argv, std::cout, std::cerr); }
