#include <iostream>
#include <string>
#include <vector>

#include "casimir_cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return casimir::cli::run(args, std::cout, std::cerr, casimir::cli::Environment::from_process());
}
