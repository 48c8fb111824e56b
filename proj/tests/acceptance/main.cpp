// Prints one line per acceptance criterion. With --expect-fail a,b the exit
// status is 0 only if exactly those criteria fail.

#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--expect-fail") {
      std::istringstream in(argv[i + 1]);
      for (std::string tok; std::getline(in, tok, ',');) expected.insert(std::stoi(tok));
    }
  }
  std::set<int> failed;
  for (int id = 1; id <= splitter::repro::kCriterionCount; ++id) {
    const auto r = splitter::repro::run_criterion(id);
    if (!r.pass) failed.insert(id);
    std::printf("%s %2d  %-38s %7.2fs  %s%s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                r.detail.c_str(), !r.pass && expected.count(id) ? "  [expected]" : "");
    std::fflush(stdout);
  }
  std::printf("%zu/%d passed\n", splitter::repro::kCriterionCount - failed.size(), splitter::repro::kCriterionCount);
  if (failed != expected) {
    std::printf("failures differ from the expected set\n");
    return 1;
  }
  return 0;
}
