#pragma once

#include <string>
#include <vector>

#include "so3kin/core.hpp"

namespace so3kin {

/// Angular velocity in rad/s, expressed in the fixed reference frame.
struct AngularVelocity {
  Vec3 w = Vec3::Zero();
};

enum class Interpolation { ZeroOrderHold, Linear };

struct RateSample {
  double t;
  AngularVelocity omega;
};

/// Time-ordered angular-velocity samples.
class RateProfile {
 public:
  // InvalidProfile unless times are finite and strictly increasing; EmptyProfile if empty.
  explicit RateProfile(std::vector<RateSample> samples,
                       Interpolation interpolation = Interpolation::Linear);

  // Two-sample profile holding `omega` over [t0, t1].
  static RateProfile constant(const Vec3& omega, double t0, double t1);

  const std::vector<RateSample>& samples() const noexcept { return samples_; }
  Interpolation interpolation() const noexcept { return interpolation_; }
  double start() const noexcept { return samples_.front().t; }
  double end() const noexcept { return samples_.back().t; }

 private:
  std::vector<RateSample> samples_;
  Interpolation interpolation_;
};

// OutOfRange outside [start, end]. Times within 1e-12 (relative) of either end are clamped.
AngularVelocity sample_rate(const RateProfile& profile, double t);

struct TrajectorySample {
  double t;
  Mat3 r;
};

struct TrajectoryMetadata {
  std::string method = "unknown";
  double dt = 0.0;
  Mat3 initial = Mat3::Identity();
  bool truncated_span = false;
  bool degrees_input = false;
};

/// Sampled attitude history. Matrices are stored as produced, drift included.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  TrajectoryMetadata metadata;
};

// Max deviation of consecutive time steps from their mean, allowed as
// 1e-12 · max(h, |t|). Returns the mean step; NonUniformSampling otherwise.
double uniform_step(const Trajectory& trajectory);

}  // namespace so3kin
