#include <iostream>

#include "hypcert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hypcert::run_cli(args, std::cout, std::cerr);
}
