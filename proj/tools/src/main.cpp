#include <iostream>

#include "mrleq/cli.hpp"

int main(int argc, char** argv) { return mrleq::cli::run(argc, argv, std::cout, std::cerr); }
