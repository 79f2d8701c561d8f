#include <iostream>

#include "jbi/cli.hpp"

int main(int argc, char** argv) {
  return jbi::cli::main(argc, argv, std::cin, std::cout, std::cerr);
}
