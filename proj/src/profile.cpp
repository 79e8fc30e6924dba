#include "so3kin/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace so3kin {

namespace {
constexpr double kRangeSlack = 1e-12;
constexpr double kUniformTol = 1e-12;
}  // namespace

RateProfile::RateProfile(std::vector<RateSample> samples, Interpolation interpolation)
    : samples_(std::move(samples)), interpolation_(interpolation) {
  if (samples_.empty()) throw Error(ErrorCode::EmptyProfile, "rate profile has no samples");
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const auto& s = samples_[k];
    if (!std::isfinite(s.t) || !s.omega.w.allFinite()) {
      throw Error(ErrorCode::InvalidProfile, "sample " + std::to_string(k) + " is not finite");
    }
    if (k > 0 && !(s.t > samples_[k - 1].t)) {
      throw Error(ErrorCode::InvalidProfile,
                  "sample times must be strictly increasing (row " + std::to_string(k) + ")");
    }
  }
}

RateProfile RateProfile::constant(const Vec3& omega, double t0, double t1) {
  return RateProfile({{t0, {omega}}, {t1, {omega}}}, Interpolation::Linear);
}

AngularVelocity sample_rate(const RateProfile& profile, double t) {
  const auto& s = profile.samples();
  const double slack = kRangeSlack * std::max({1.0, std::abs(profile.start()), std::abs(profile.end())});
  if (!std::isfinite(t) || t < profile.start() - slack || t > profile.end() + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "t = " << t << " outside profile range [" << profile.start() << ", " << profile.end() << "]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  t = std::clamp(t, profile.start(), profile.end());

  // First sample strictly after t; its predecessor is the latest sample with time <= t.
  auto upper = std::upper_bound(s.begin(), s.end(), t,
                                [](double value, const RateSample& x) { return value < x.t; });
  const auto& lo = *(upper - 1);
  if (upper == s.end() || lo.t == t || profile.interpolation() == Interpolation::ZeroOrderHold) {
    return lo.omega;
  }
  const auto& hi = *upper;
  const double alpha = (t - lo.t) / (hi.t - lo.t);
  return {lo.omega.w + alpha * (hi.omega.w - lo.omega.w)};
}

double uniform_step(const Trajectory& trajectory) {
  const auto& s = trajectory.samples;
  if (s.size() < 2) throw Error(ErrorCode::TooFewSamples, "need at least two samples for a step size");
  const double h = (s.back().t - s.front().t) / static_cast<double>(s.size() - 1);
  if (!(h > 0.0)) throw Error(ErrorCode::NonUniformSampling, "sample times are not increasing");
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double step = s[k].t - s[k - 1].t;
    const double allowed = kUniformTol * std::max(h, std::abs(s[k].t));
    if (std::abs(step - h) > allowed) {
      std::ostringstream os;
      os.precision(17);
      os << "step " << k << " is " << step << ", expected " << h;
      throw Error(ErrorCode::NonUniformSampling, os.str());
    }
  }
  return h;
}

}  // namespace so3kin
