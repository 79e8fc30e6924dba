#pragma once

// Straight-line serial versions of the parallel kernels. Kept for tests and
// benchmarks; the parallel kernels must agree with these bit for bit.

#include "so3kin/differential.hpp"
#include "so3kin/propagator.hpp"

namespace so3kin::reference {

ResidualReport finite_difference_residual(const Trajectory& trajectory, const RateProfile& profile);

DriftReport drift_report(const Trajectory& trajectory);

}  // namespace so3kin::reference
