#include <iostream>

#include "wpn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wpn::run_cli(args, std::cout, std::cerr);
}
