#pragma once

#include <string>
#include <vector>

#include "liouville/series.hpp"

namespace liouville {

enum class Profile { quick, full };

/// "quick" or "full"; DomainError otherwise.
Profile parse_profile(const std::string& name);

struct Metric {
  std::string name;
  double value;
  double limit;
  bool at_least = false;  // passes when value >= limit instead of value <= limit
  bool gating = true;     // informational metrics do not affect the verdict

  bool ok() const { return at_least ? value >= limit : value <= limit; }
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Metric> metrics;
  double seconds = 0;
  double time_limit = 0;
  std::string error;  // set when the check threw

  bool passed() const;
};

struct VerificationReport {
  std::vector<CriterionResult> criteria;
  bool passed() const;
};

/// Acceptance criteria 1-8 for one shape. The quick profile uses the sample
/// counts of the criteria; the full profile repeats them on denser samples
/// and one more refinement level, with the same thresholds.
VerificationReport run_verification(const SemiAxes<Rational>& axes, Profile profile = Profile::quick);

/// Runs a single criterion (1-8).
CriterionResult run_criterion(int id, const SemiAxes<Rational>& axes, Profile profile = Profile::quick);

/// One line: "PASS 3 inversion roundtrips: name=value (<= limit) ... [0.02 s / 10 s]".
std::string format_result(const CriterionResult& result);

}  // namespace liouville
