#include <iostream>
#include <string>
#include <vector>

#include "dissent/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dissent::cli::run_cli(args, std::cout, std::cerr);
}
