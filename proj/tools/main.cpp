#include <iostream>
#include <string>
#include <vector>

#include "bandspec/cli.hpp"

int main(int argc, char** argv) {
  return bandspec::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
