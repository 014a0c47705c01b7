#include <iostream>

#include "unicluster_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return unicluster::cli::run(args, std::cout, std::cerr);
}
