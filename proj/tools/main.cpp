#include <iostream>

#include "bvalue/cli.hpp"

int main(int argc, char** argv) {
  return bvalue::run_cli(argc, argv, std::cout, std::cerr);
}
