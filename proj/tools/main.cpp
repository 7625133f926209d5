#include <iostream>
#include <vector>

#include "malle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return malle::cli::run(args, std::cout, std::cerr);
}
