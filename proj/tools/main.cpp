#include <iostream>
#include <string>
#include <vector>

#include "ergochain/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ergochain::cli::dispatch(args, std::cout, std::cerr);
}
