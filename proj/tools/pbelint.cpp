#include <iostream>
#include <string>
#include <vector>

#include "pbelint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pbelint::cli::run(args, std::cout, std::cerr);
}
