#include <iostream>

#include "qcomm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qcomm::run(args, std::cout, std::cerr);
}
