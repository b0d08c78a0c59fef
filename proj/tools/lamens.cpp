#include <iostream>
#include <string>
#include <vector>

#include "lamens/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lamens::dispatch(args, std::cout, std::cerr);
}
