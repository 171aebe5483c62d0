#include <iostream>

#include "hsp/cli.hpp"

int main(int argc, char** argv) {
  return hsp::cli::run_command_line(argc, argv, std::cout, std::cerr);
}
