#include "so3kin/differential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace so3kin {

namespace {

// Roundoff floor below which a residual is treated as exactly zero by residual_study.
constexpr double kExactResidual = 1e-14;

double central_residual(const Trajectory& traj, const RateProfile& profile, std::size_t k, double h) {
  const auto& s = traj.samples;
  const Mat3 fd = (s[k + 1].r - s[k - 1].r) / (2.0 * h);
  const Mat3 rhs = hat(sample_rate(profile, s[k].t).w).matrix() * s[k].r;
  return (fd - rhs).norm();
}

}  // namespace

Mat3 differential_increment(const InfinitesimalRotation& d, const RotationMatrix& r) {
  return hat(d.dphi).matrix() * r.matrix();
}

Mat3 rotation_rate(const AngularVelocity& omega, const RotationMatrix& r) {
  return hat(omega.w).matrix() * r.matrix();
}

ResidualReport finite_difference_residual(const Trajectory& trajectory, const RateProfile& profile) {
  const auto& s = trajectory.samples;
  if (s.size() < 3) throw Error(ErrorCode::TooFewSamples, "need at least three samples");
  const double h = uniform_step(trajectory);
  // Range errors must surface before the parallel region; exceptions may not escape it.
  for (std::size_t k = 1; k + 1 < s.size(); ++k) sample_rate(profile, s[k].t);
  for (const auto& sample : s) require_finite(sample.r, "trajectory sample");

  const auto n = static_cast<std::ptrdiff_t>(s.size()) - 2;
  std::vector<ResidualSample> out(static_cast<std::size_t>(n));
  double max_residual = 0.0;
#pragma omp parallel for reduction(max : max_residual) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i) + 1;
    const double r = central_residual(trajectory, profile, k, h);
    out[static_cast<std::size_t>(i)] = {s[k].t, r};
    max_residual = std::max(max_residual, r);
  }

  ResidualReport report;
  report.max_residual = max_residual;
  report.per_sample = std::move(out);
  report.step_sizes = {h};
  report.step_max_residuals = {max_residual};
  return report;
}

double estimate_convergence_order(const std::vector<std::pair<double, double>>& residuals) {
  if (residuals.size() < 2) throw Error(ErrorCode::DegenerateInput, "need at least two (step, residual) pairs");
  for (std::size_t a = 0; a < residuals.size(); ++a) {
    const auto [step, res] = residuals[a];
    if (!(step > 0.0) || !(res > 0.0) || !std::isfinite(step) || !std::isfinite(res)) {
      throw Error(ErrorCode::DegenerateInput, "steps and residuals must be finite and positive");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (residuals[b].first == step) throw Error(ErrorCode::DegenerateInput, "duplicate step size");
    }
  }
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [step, res] : residuals) {
    mx += std::log(step);
    my += std::log(res);
  }
  mx /= static_cast<double>(residuals.size());
  my /= static_cast<double>(residuals.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [step, res] : residuals) {
    const double dx = std::log(step) - mx;
    sxy += dx * (std::log(res) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

Trajectory subsample(const Trajectory& trajectory, std::size_t stride) {
  if (stride == 0) throw Error(ErrorCode::DegenerateInput, "stride must be positive");
  Trajectory out;
  out.metadata = trajectory.metadata;
  out.metadata.dt *= static_cast<double>(stride);
  for (std::size_t k = 0; k < trajectory.samples.size(); k += stride) out.samples.push_back(trajectory.samples[k]);
  return out;
}

ResidualReport residual_study(const Trajectory& trajectory, const RateProfile& profile,
                              std::vector<double> steps) {
  if (steps.empty()) throw Error(ErrorCode::DegenerateInput, "no step sizes given");
  const double base = uniform_step(trajectory);
  std::sort(steps.begin(), steps.end());

  ResidualReport study;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double h = steps[i];
    const double ratio = h / base;
    const double stride = std::round(ratio);
    if (!(h > 0.0) || stride < 1.0 || std::abs(ratio - stride) > 1e-9 * std::max(1.0, ratio)) {
      throw Error(ErrorCode::DegenerateInput,
                  "step " + std::to_string(h) + " is not a multiple of the trajectory step " + std::to_string(base));
    }
    ResidualReport one = finite_difference_residual(subsample(trajectory, static_cast<std::size_t>(stride)), profile);
    study.step_sizes.push_back(one.step_sizes.front());
    study.step_max_residuals.push_back(one.max_residual);
    pairs.emplace_back(one.step_sizes.front(), one.max_residual);
    if (i == 0) {
      study.per_sample = std::move(one.per_sample);
      study.max_residual = one.max_residual;
    }
  }

  const bool exact = std::all_of(pairs.begin(), pairs.end(), [](const auto& p) { return p.second <= kExactResidual; });
  if (pairs.size() >= 2 && !exact) {
    std::vector<std::pair<double, double>> usable;
    for (const auto& p : pairs) {
      if (p.second > 0.0) usable.push_back(p);
    }
    if (usable.size() >= 2) study.estimated_order = estimate_convergence_order(usable);
  }
  return study;
}

}  // namespace so3kin
