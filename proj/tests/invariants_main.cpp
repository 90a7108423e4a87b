#include <chrono>
#include <cstdio>

#include "invariants.hpp"

int main() {
  int failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& inv : invariants::all()) {
    const auto start = std::chrono::steady_clock::now();
    const invariants::Outcome o = inv.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-52s checked=%zu  %.2fs%s%s\n", o.ok ? "PASS" : "FAIL", inv.name, o.checked, secs,
                o.ok ? "" : "  ", o.detail.c_str());
    failed += !o.ok;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of %zu invariant suites failed, %.2fs\n", failed, invariants::all().size(), total);
  return failed == 0 ? 0 : 1;
}
