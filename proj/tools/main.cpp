#include <iostream>

#include "maf_cli.hpp"

int main(int argc, char** argv) {
  return maf::cli::run(argc, argv, std::cout, std::cerr);
}
