#pragma once

#include "forge/action/trajectory.hpp"

namespace forge::action {

// Mean Euclidean norm of a[t+1] - 2a[t] + a[t-1] over interior steps.
// Throws ValidationError when T < 3.
double jitter(const Trajectory& traj);

}  // namespace forge::action
