#include <iostream>
#include <string>
#include <vector>

#include "lefdisc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lefdisc::cli::run(std::move(args), std::cout, std::cerr);
}
