#include <iostream>
#include <string>
#include <vector>

#include "revdetect/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return revdetect::cli::run_cli(args, nullptr, std::cout, std::cerr);
}
