#include <iostream>
#include <string>
#include <vector>

#include "syzygy/cli.hpp"

int main(int argc, char** argv) {
  return syzygy::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
