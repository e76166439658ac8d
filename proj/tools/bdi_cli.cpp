#include <cstdlib>
#include <iostream>
#include <string>
#include <unistd.h>
#include <vector>

#include "bdi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bdi::CliEnv env;
  env.color = std::getenv("BDI_NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
  return bdi::run_cli(args, std::cout, std::cerr, env);
}
