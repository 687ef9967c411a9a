#pragma once

#include <cstdint>
#include <vector>

#include "confint/interval.hpp"

namespace confint {

/// Coverage probability and mean length of one method along an abscissa (true
/// p for binomial curves, sample size n for simulations). `n_reps` is the
/// number of simulated replications per point, 0 for exact enumeration.
struct CoverageCurve {
  Method method = Method::exact;
  std::vector<double> x;
  std::vector<double> coverage;
  std::vector<double> mean_length;
  std::vector<double> mc_stderr;
  std::int64_t n_reps = 0;
};

}  // namespace confint
