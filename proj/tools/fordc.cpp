#include "fordc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return fordc::cli::run(argc, argv, std::cout, std::cerr);
}
