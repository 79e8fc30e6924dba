#include "so3kin/reference.hpp"

#include <algorithm>

namespace so3kin::reference {

ResidualReport finite_difference_residual(const Trajectory& trajectory, const RateProfile& profile) {
  const auto& s = trajectory.samples;
  if (s.size() < 3) throw Error(ErrorCode::TooFewSamples, "need at least three samples");
  const double h = uniform_step(trajectory);
  for (const auto& sample : s) require_finite(sample.r, "trajectory sample");
  ResidualReport report;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const Mat3 fd = (s[k + 1].r - s[k - 1].r) / (2.0 * h);
    const Mat3 rhs = hat(sample_rate(profile, s[k].t).w).matrix() * s[k].r;
    const double r = (fd - rhs).norm();
    report.per_sample.push_back({s[k].t, r});
    report.max_residual = std::max(report.max_residual, r);
  }
  report.step_sizes = {h};
  report.step_max_residuals = {report.max_residual};
  return report;
}

DriftReport drift_report(const Trajectory& trajectory) {
  if (trajectory.samples.empty()) throw Error(ErrorCode::TooFewSamples, "drift report needs a nonempty trajectory");
  DriftReport report;
  for (const auto& sample : trajectory.samples) {
    const double ortho = orthogonality_error(sample.r);
    const double det = determinant_error(sample.r);
    report.per_sample.push_back({sample.t, ortho, det});
    report.max_ortho_err = std::max(report.max_ortho_err, ortho);
    report.max_det_err = std::max(report.max_det_err, det);
  }
  return report;
}

}  // namespace so3kin::reference
