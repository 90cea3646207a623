#include <iostream>
#include <string>
#include <vector>

#include "dechyp/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dechyp::cli::run_command(args, std::cout, std::cerr);
}
