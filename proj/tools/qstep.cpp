#include <iostream>
#include <string>
#include <vector>

#include "qstep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qstep::cli::run(args, std::cout, std::cerr);
}
