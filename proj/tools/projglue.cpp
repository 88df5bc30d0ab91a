#include <iostream>

#include "projglue/cli.hpp"

int main(int argc, char** argv) { return projglue::cli::run(argc, argv, std::cout, std::cerr); }
