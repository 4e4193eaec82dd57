#include <iostream>

#include "pframes_cli/app.hpp"

int main(int argc, char** argv) { return pframes::cli::run_cli(argc, argv, std::cout, std::cerr); }
