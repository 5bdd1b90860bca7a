// Acceptance check: one line per criterion for the reference shape (3,2,1).

#include <cstdio>
#include <cstring>

#include "liouville/verification.hpp"

int main(int argc, char** argv) {
  liouville::Profile profile = liouville::Profile::quick;
  if (argc > 1 && std::strcmp(argv[1], "--full") == 0) profile = liouville::Profile::full;

  const liouville::SemiAxes<liouville::Rational> axes{3, 2, 1};
  int failed = 0;
  for (int id = 1; id <= 8; ++id) {
    const liouville::CriterionResult r = liouville::run_criterion(id, axes, profile);
    std::printf("%s\n", liouville::format_result(r).c_str());
    if (!r.passed()) ++failed;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
