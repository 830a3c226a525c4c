#include <iostream>

#include "memgift/cli.h"

int main(int argc, char** argv) {
  return memgift::cli::run(argc, argv, std::cout, std::cerr);
}
