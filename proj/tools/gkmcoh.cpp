#include <iostream>

#include "gkmcoh/cli.hpp"

int main(int argc, char **argv) {
  const gkmcoh::cli::CommandResult r = gkmcoh::cli::run({argv + 1, argv + argc});
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
