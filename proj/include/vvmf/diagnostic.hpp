#pragma once

#include <string>
#include <vector>

namespace vvmf {

// A named residual and the bound it must stay under (or, for quantities
// where larger is better, the floor it must exceed).
struct Diagnostic {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool lower_is_better = true;

  bool passed() const { return lower_is_better ? value < tolerance : value > tolerance; }
};

inline bool all_passed(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (!d.passed()) return false;
  return true;
}

}  // namespace vvmf
