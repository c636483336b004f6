#include <iostream>

#include "exwlex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return exwlex::run_cli(args, std::cout, std::cerr);
}
