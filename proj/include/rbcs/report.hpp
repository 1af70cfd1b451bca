#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace rbcs {

/// One measured identity. `n` is the level index the residual belongs to,
/// or -1 when the check is not indexed by level.
struct Residual {
  std::string check;
  int n = -1;
  double residual = 0.0;
  double tolerance = 0.0;

  bool pass() const { return residual <= tolerance; }
};

using ResidualReport = std::vector<Residual>;

inline double max_residual(const ResidualReport& report) {
  double worst = 0.0;
  for (const auto& r : report) worst = std::max(worst, r.residual);
  return worst;
}

inline bool all_pass(const ResidualReport& report) {
  return std::all_of(report.begin(), report.end(), [](const Residual& r) { return r.pass(); });
}

}  // namespace rbcs
