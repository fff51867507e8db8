#include <iostream>

#include "bpdmn/cli.hpp"

int main(int argc, char** argv) {
  return bpdmn::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
