#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <string>
#include <string_view>
#include <vector>

#include "cli_path.hpp"

std::string g_cli_bin;

int main(int argc, char** argv) {
  std::vector<char*> forwarded;
  for (int i = 0; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg.rfind("--cli-bin=", 0) == 0) {
      g_cli_bin = std::string(arg.substr(10));
    } else {
      forwarded.push_back(argv[i]);
    }
  }
  doctest::Context context(static_cast<int>(forwarded.size()), forwarded.data());
  return context.run();
}
