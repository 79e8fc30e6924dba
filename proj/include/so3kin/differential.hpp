#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "so3kin/algebra.hpp"
#include "so3kin/profile.hpp"

namespace so3kin {

// dR = hat(dφ) · R
Mat3 differential_increment(const InfinitesimalRotation& d, const RotationMatrix& r);

// dR/dt = hat(ω) · R, with ω spatial.
Mat3 rotation_rate(const AngularVelocity& omega, const RotationMatrix& r);

struct ResidualSample {
  double t;
  double residual;
};

struct ResidualReport {
  double max_residual = 0.0;
  std::vector<ResidualSample> per_sample;  // at the finest step in step_sizes
  std::vector<double> step_sizes;
  std::vector<double> step_max_residuals;  // parallel to step_sizes
  std::optional<double> estimated_order;
};

/// Central-difference check of dR/dt = hat(ω)R at every interior sample:
/// ‖(R(t+h) − R(t−h))/(2h) − hat(ω(t))R(t)‖_F. Evaluated in parallel; the
/// result is identical to reference::finite_difference_residual.
ResidualReport finite_difference_residual(const Trajectory& trajectory, const RateProfile& profile);

/// Least-squares slope of log(residual) against log(step).
double estimate_convergence_order(const std::vector<std::pair<double, double>>& residuals);

/// Runs finite_difference_residual on `trajectory` subsampled at each step in
/// `steps` (each an integer multiple of the trajectory step) and regresses the
/// per-step maxima. per_sample holds the finest step's samples.
ResidualReport residual_study(const Trajectory& trajectory, const RateProfile& profile,
                              std::vector<double> steps);

// Every `stride`-th sample, starting from the first.
Trajectory subsample(const Trajectory& trajectory, std::size_t stride);

}  // namespace so3kin
