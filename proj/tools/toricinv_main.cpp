#include <iostream>
#include <vector>

#include "toricinv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toricinv::run_command(args, std::cout, std::cerr);
}
