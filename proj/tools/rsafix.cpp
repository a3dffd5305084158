#include <iostream>
#include <string>
#include <vector>

#include "rsafix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rsafix::run_cli(args, std::cout, std::cerr);
}
