#include <iostream>
#include <string>
#include <vector>

#include "fifobuf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fifobuf::run_cli(args, std::cout, std::cerr);
}
