#include <iostream>
#include <string>
#include <vector>

#include "o1kepler/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return o1kepler::run_cli(args, std::cout, std::cerr);
}
