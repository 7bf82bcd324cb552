#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "catent/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string stdin_text;
  const bool needs_stdin = [&] {
    if (args.empty() || args[0] == "verify") return false;
    for (std::size_t i = 1; i < args.size(); ++i)
      if (args[i] == "--input") return false;
    return true;
  }();
  if (needs_stdin) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    stdin_text = buf.str();
  }
  const catent::CliResult result = catent::run_cli(args, stdin_text);
  std::cout << result.out;
  std::cerr << result.err;
  return result.code;
}
