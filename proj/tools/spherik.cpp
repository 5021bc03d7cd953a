#include <iostream>
#include <string>
#include <vector>

#include "spherik/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spherik::run(args, std::cout, std::cerr);
}
