#include <iostream>
#include <string>
#include <vector>

#include "uplab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return uplab::cli::run(args, std::cout);
}
