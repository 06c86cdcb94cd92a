#include <iostream>

#include "pg/cli.hpp"

int main(int argc, char** argv) { return pg::cli::run(argc, argv, std::cout, std::cerr); }
