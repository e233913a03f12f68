#include <vector>

#include "gq/cli.hpp"

int main(int argc, char** argv) {
  return gq::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
