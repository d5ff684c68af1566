#include "hadamard/suites.hpp"

#include <cstdio>

using namespace hadamard;

int main() {
  int failed = 0;
  for (int i = 1; i <= 10; ++i) {
    const auto res = run_criterion(std::to_string(i));
    std::printf("%s criterion %d: %s: %s\n", res.pass ? "PASS" : "FAIL", i, res.name.c_str(), res.summary.c_str());
    if (!res.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
