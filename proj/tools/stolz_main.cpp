#include <string>
#include <vector>

#include "stolz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stolz::run_cli(std::move(args));
}
