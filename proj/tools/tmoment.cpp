#include "tmoment/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tmoment::cli::run(argc, argv, std::cout, std::cerr); }
