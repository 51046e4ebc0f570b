#include <iostream>

#include "smoothtable/cli.hpp"

int main(int argc, char** argv) {
  return smoothtable::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
