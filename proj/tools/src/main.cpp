#include <iostream>

#include "holant/cli.hpp"

int main(int argc, char** argv) {
  return holant::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
