#include <iostream>

#include "holant/cli.hpp"

// Same as `holant acceptance`: one PASS/FAIL line per criterion, nonzero exit on failure.
int main(int argc, char** argv) {
  std::vector<std::string> args{"acceptance"};
  args.insert(args.end(), argv + 1, argv + argc);
  return holant::cli::run(args, std::cout, std::cerr);
}
