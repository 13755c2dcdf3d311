#include <cstdio>
#include <string>
#include <vector>

#include "tamedist/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  tamedist::CliResult res = tamedist::run_cli(args);
  std::fputs(res.output.c_str(), stdout);
  return res.code;
}
