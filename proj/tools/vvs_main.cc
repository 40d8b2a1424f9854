#include <iostream>
#include <string>
#include <vector>

#include "vvs/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vvs::cli_main(args, std::cout, std::cerr);
}
