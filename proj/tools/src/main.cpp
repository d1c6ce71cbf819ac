#include <iostream>

#include "projsem/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return projsem::cli::run_cli(args, std::cin, std::cout, std::cerr);
}
