#include <iostream>

#include "edgesim/scenario/cli.hpp"

int main(int argc, char** argv) {
  return edgesim::scenario::cli_main(argc, argv, std::cout, std::cerr);
}
