#include <iostream>

#include "afflats/cli.hpp"

int main(int argc, char** argv) {
  return afflats::cli::run(argc, argv, {std::cout, std::cerr});
}
