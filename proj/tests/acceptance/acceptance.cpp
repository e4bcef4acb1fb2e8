// Runs acceptance criteria 1-11 and prints one PASS/FAIL line each.
// Usage: acceptance [criterion ids...]; exit status 1 if any selected criterion fails.
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "hardy/checks.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int id = 1; id <= 11; ++id) ids.push_back(id);

  int failed = 0;
  for (int id : ids) {
    const hardy::CheckBatch b = hardy::acceptance_criterion(id, 20240601);
    std::printf("%s criterion %s (%.2fs)", b.passed ? "PASS" : "FAIL", b.name.c_str(), b.seconds);
    for (const auto& [key, v] : b.metrics) std::printf(" %s=%.10g", key.c_str(), v);
    std::printf("\n");
    for (const auto& item : b.items)
      if (!item.passed || !b.passed)
        std::printf("    %s %s: %.3g (bound %.3g)%s%s\n", item.passed ? "ok " : "BAD", item.label.c_str(), item.value,
                    item.bound, item.note.empty() ? "" : " ", item.note.c_str());
    if (!b.error.empty()) std::printf("    error: %s\n", b.error.c_str());
    failed += b.passed ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
