#include <iostream>

#include "pext/cli.hpp"

int main(int argc, char** argv) {
  return pext::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
