// Acceptance driver: one PASS/FAIL line per criterion, followed by its rows.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "cosserat/verify/suite.hpp"

namespace {

void usage() { std::fprintf(stderr, "usage: acceptance [--criterion N] [--golden DIR]\n"); }

}  // namespace

int main(int argc, char** argv) {
  using namespace cosserat::verify;
  std::vector<int> ids;
  std::string golden = COSSERAT_GOLDEN_DIR;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
      ids.push_back(std::atoi(argv[++i]));
    } else if (!std::strcmp(argv[i], "--golden") && i + 1 < argc) {
      golden = argv[++i];
    } else {
      usage();
      return 3;
    }
  }
  if (ids.empty())
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);

  int failed = 0;
  for (int id : ids) {
    if (id < 1 || id > kCriterionCount) {
      usage();
      return 3;
    }
    CriterionReport r;
    try {
      r = criterion(id, golden);
    } catch (const std::exception& e) {
      std::printf("criterion %d: FAIL (exception: %s)\n", id, e.what());
      ++failed;
      continue;
    }
    std::printf("criterion %d %s: %s (%.2f s)\n", r.id, r.title.c_str(), r.passed() ? "PASS" : "FAIL", r.seconds);
    for (const auto& c : r.checks) {
      if (c.relation.empty())
        std::printf("  [%s] %s = %.6g\n", to_string(c.status), c.property.c_str(), c.value);
      else
        std::printf("  [%s] %s = %.6g (%s %.3g)\n", to_string(c.status), c.property.c_str(), c.value,
                    c.relation.c_str(), c.threshold);
    }
    if (!r.passed()) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
