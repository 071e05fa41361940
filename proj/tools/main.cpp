#include <iostream>
#include <string>
#include <vector>

#include "qksys/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qksys::run_cli(args, std::cin, std::cout, std::cerr);
}
