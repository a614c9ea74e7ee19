#include <iostream>
#include <string>
#include <vector>

#include "ctxmine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ctxmine::run_cli(args, std::cin, std::cout, std::cerr);
}
