#include <iostream>

#include "dsss_stego/cli.hpp"

int main(int argc, char** argv) {
  return dsss_stego::cli::run(argc, argv, std::cout, std::cerr);
}
