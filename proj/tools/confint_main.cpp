#include <iostream>

#include "confint/cli.hpp"

int main(int argc, char** argv) {
  return confint::cli::run(argc, argv, std::cout, std::cerr);
}
