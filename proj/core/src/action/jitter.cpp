#include "forge/action/jitter.hpp"

#include <cmath>

#include "forge/error.hpp"

namespace forge::action {

double jitter(const Trajectory& traj) {
  if (traj.steps() < 3) throw ValidationError("jitter needs at least 3 steps");
  double total = 0.0;
  for (std::size_t t = 1; t + 1 < traj.steps(); ++t) {
    double sq = 0.0;
    for (std::size_t d = 0; d < traj.dims(); ++d) {
      const double dd = traj.at(t + 1, d) - 2.0 * traj.at(t, d) + traj.at(t - 1, d);
      sq += dd * dd;
    }
    total += std::sqrt(sq);
  }
  return total / static_cast<double>(traj.steps() - 2);
}

}  // namespace forge::action
