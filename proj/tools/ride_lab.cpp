#include <iostream>

#include "ridelab/cli/commands.hpp"

int main(int argc, char** argv) {
  return ridelab::cli::run_cli(argc, argv, std::cout, std::cerr);
}
