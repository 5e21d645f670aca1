#include <iostream>
#include <string>
#include <vector>

#include "uag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return uag::cli::run(args, std::cout, std::cerr);
}
