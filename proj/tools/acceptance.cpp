// Runs the acceptance criteria and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "curvel2/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = curvel2::kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = true;
  for (const auto& r : curvel2::run_acceptance(seed)) {
    std::printf("criterion %d: %s  %s  (%s) [%.2fs]\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str(), r.seconds);
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
