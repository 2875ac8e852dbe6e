#include <iostream>
#include <string>
#include <vector>

#include "nstars/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nstars::cli::run(args, std::cout, std::cerr);
}
