#include <iostream>
#include <string>
#include <vector>

#include "frogcli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return frogcli::run(args, std::cout, std::cerr);
}
