// Acceptance gate: runs the numbered criteria and prints one line per check.
// With arguments, runs only the named criteria (useful for ctest sharding).

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "kwlab/suites.hpp"

int main(int argc, char** argv) {
  using namespace kwlab;
  unsigned seed = kDefaultSeed;
  if (const char* env = std::getenv("KWLAB_SEED")) seed = (unsigned)std::strtoul(env, nullptr, 10);

  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(argv[i]);
  if (ids.empty())
    for (const auto& [id, fn] : all_criteria()) ids.push_back(id);

  int failures = 0, skips = 0;
  for (const auto& id : ids) {
    CheckResult r = run_criterion(id, seed);
    const char* tag = r.status == CheckStatus::kPass   ? "PASS"
                      : r.status == CheckStatus::kFail ? "FAIL"
                                                       : "SKIP";
    std::printf("[%s] criterion %2s  %s: %s\n", tag, r.id.c_str(), r.name.c_str(),
                r.detail.c_str());
    if (r.status == CheckStatus::kFail) ++failures;
    if (r.status == CheckStatus::kSkipped) ++skips;
  }
  std::printf("%d/%zu passed, %d failed, %d skipped\n", (int)ids.size() - failures - skips,
              ids.size(), failures, skips);
  return failures ? 1 : 0;
}
