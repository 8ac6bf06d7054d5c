#include <iostream>

#include "relwb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return relwb::cli::run_command(args, std::cout, std::cerr);
}
