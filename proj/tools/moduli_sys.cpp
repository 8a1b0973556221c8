#include <iostream>
#include <string>
#include <vector>

#include "moduli/cli.hpp"

int main(int argc, char** argv) {
  return moduli::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
