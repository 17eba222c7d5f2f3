#include <iostream>
#include <string>
#include <vector>

#include "regsub/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return regsub::run_cli(args, std::cout, std::cerr);
}
