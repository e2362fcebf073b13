// Acceptance gate: runs the full verification suite and prints one
// pass/fail line per criterion. Exits nonzero if anything fails.

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "bregman/verify.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto criteria = bregman::verify::run_suite("all");
  bool ok = true;
  for (const auto& c : criteria) {
    std::printf("[%s] %s\n", c.pass() ? "PASS" : "FAIL", c.name.c_str());
    for (const auto& r : c.reports)
      if (!r.pass)
        std::printf("    [FAIL] %s sup_error=%.6g tol=%.6g witness=%.6g\n",
                    r.identity.c_str(), r.sup_error, r.tolerance, r.witness_x);
    ok = ok && c.pass();
  }
  double secs = std::chrono::duration<double>(clock::now() - t0).count();
  std::printf("%d/%d criteria passed in %.1fs\n",
              int(std::count_if(criteria.begin(), criteria.end(),
                                [](const auto& c) { return c.pass(); })),
              int(criteria.size()), secs);
  return ok ? 0 : 1;
}
