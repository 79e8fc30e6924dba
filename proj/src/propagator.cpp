#include "so3kin/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace so3kin {

namespace {
constexpr double kWholeStepTol = 1e-9;

void require_positive_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::BadStep, "dt must be positive and finite");
}
}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Exponential: return "exp";
    case Method::Euler: return "euler";
    case Method::EulerRenorm: return "euler-renorm";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "exp") return Method::Exponential;
  if (name == "euler") return Method::Euler;
  if (name == "euler-renorm") return Method::EulerRenorm;
  throw Error(ErrorCode::InvalidConfig, "unknown method '" + std::string(name) + "'");
}

RotationMatrix step_exponential(const RotationMatrix& r, const AngularVelocity& omega, double dt) {
  require_positive_step(dt);
  // R + (exp − I)R rather than exp·R: the rounded identity in exp carries a
  // one-ulp orthogonality defect that would compound coherently step after step.
  const Mat3 increment = exp_so3_increment({omega.w * dt});
  return RotationMatrix::validate(r.matrix() + increment * r.matrix());
}

Mat3 step_euler(const Mat3& r, const AngularVelocity& omega, double dt) {
  require_positive_step(dt);
  const Mat3 next = infinitesimal_rotation({omega.w * dt}) * r;
  require_finite(next, "Euler step");
  return next;
}

RotationMatrix step_euler_renorm(const RotationMatrix& r, const AngularVelocity& omega, double dt) {
  return project_to_so3(step_euler(r.matrix(), omega, dt));
}

Trajectory propagate(const RotationMatrix& r0, const RateProfile& profile, double dt, Method method) {
  require_positive_step(dt);
  const double t0 = profile.start();
  const double span = profile.end() - t0;
  const double q = span / dt;
  const double nearest = std::round(q);
  const bool whole = std::abs(q - nearest) <= kWholeStepTol * std::max(1.0, q);
  const double count = whole ? nearest : std::floor(q);
  if (count < 1.0) throw Error(ErrorCode::BadStep, "dt exceeds the profile span");

  const auto steps = static_cast<std::size_t>(count);
  Trajectory traj;
  traj.metadata.method = std::string(method_name(method));
  traj.metadata.dt = dt;
  traj.metadata.initial = r0.matrix();
  traj.metadata.truncated_span = !whole;
  traj.samples.reserve(steps + 1);
  traj.samples.push_back({t0, r0.matrix()});

  RotationMatrix on_manifold = r0;
  Mat3 raw = r0.matrix();
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    // Explicit Euler reads ω at the step start; the exponential stepper at the midpoint.
    const double at = method == Method::Exponential ? t + 0.5 * dt : t;
    const AngularVelocity omega = sample_rate(profile, at);
    switch (method) {
      case Method::Exponential:
        on_manifold = step_exponential(on_manifold, omega, dt);
        raw = on_manifold.matrix();
        break;
      case Method::Euler:
        raw = step_euler(raw, omega, dt);
        break;
      case Method::EulerRenorm:
        on_manifold = step_euler_renorm(on_manifold, omega, dt);
        raw = on_manifold.matrix();
        break;
    }
    traj.samples.push_back({t0 + static_cast<double>(k + 1) * dt, raw});
  }
  return traj;
}

std::vector<Trajectory> propagate_all(const RotationMatrix& r0, const RateProfile& profile, double dt,
                                      std::vector<Method> methods) {
  std::sort(methods.begin(), methods.end(),
            [](Method a, Method b) { return method_name(a) < method_name(b); });
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  const auto n = static_cast<std::ptrdiff_t>(methods.size());
  std::vector<Trajectory> out(methods.size());
  std::vector<std::exception_ptr> errors(methods.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = propagate(r0, profile, dt, methods[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

DriftReport drift_report(const Trajectory& trajectory) {
  const auto& s = trajectory.samples;
  if (s.empty()) throw Error(ErrorCode::TooFewSamples, "drift report needs a nonempty trajectory");
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  DriftReport report;
  report.per_sample.resize(s.size());
  double max_ortho = 0.0;
  double max_det = 0.0;
#pragma omp parallel for reduction(max : max_ortho, max_det) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double ortho = orthogonality_error(s[k].r);
    const double det = determinant_error(s[k].r);
    report.per_sample[k] = {s[k].t, ortho, det};
    max_ortho = std::max(max_ortho, ortho);
    max_det = std::max(max_det, det);
  }
  report.max_ortho_err = max_ortho;
  report.max_det_err = max_det;
  return report;
}

}  // namespace so3kin
