#include <iostream>

#include "hypcomm/cli.hpp"

int main(int argc, char** argv) {
  return hypcomm::cli::run(argc, argv, std::cout, std::cerr);
}
