#ifndef WSHRINK_VERIFY_HPP
#define WSHRINK_VERIFY_HPP

#include <string>
#include <vector>

namespace wshrink {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reduced-size runs of the library invariants: transform exactness, closed
/// forms, thresholding inequalities, coefficient decay, the set-A implication
/// and reproducibility. Takes a few seconds.
std::vector<CheckResult> run_self_checks(unsigned workers = 0);

}  // namespace wshrink

#endif  // WSHRINK_VERIFY_HPP
