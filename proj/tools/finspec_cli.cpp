#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "finspec/cli.hpp"

namespace {

std::string colorize(std::string text) {
  const std::pair<const char*, const char*> subs[] = {
      {"[PASS]", "\033[32m[PASS]\033[0m"},
      {"[FAIL]", "\033[31m[FAIL]\033[0m"},
  };
  for (const auto& [from, to] : subs) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
      text.replace(pos, std::strlen(from), to);
      pos += std::strlen(to);
    }
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  finspec::CommandResult res = finspec::run_command(args);
  if (!res.human.empty()) {
    bool color = isatty(fileno(stdout)) != 0 && std::getenv("NO_COLOR") == nullptr;
    std::string text = color ? colorize(res.human) : res.human;
    std::fputs(text.c_str(), stdout);
  }
  return res.exit_code;
}
