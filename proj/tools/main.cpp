#include <iostream>
#include <string>
#include <vector>

#include "mosrank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mosrank::run_cli(args, std::cout, std::cerr);
}
