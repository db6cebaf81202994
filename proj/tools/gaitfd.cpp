#include <iostream>

#include "gaitfd/cli.hpp"

int main(int argc, char** argv) {
  return gaitfd::cli::main_entry(argc, argv, std::cout, std::cerr);
}
