#pragma once

#include <string_view>
#include <vector>

#include "so3kin/algebra.hpp"
#include "so3kin/profile.hpp"

namespace so3kin {

enum class Method { Exponential, Euler, EulerRenorm };

// CLI names: "exp", "euler", "euler-renorm".
std::string_view method_name(Method method);
Method parse_method(std::string_view name);

struct DriftSample {
  double t;
  double ortho_err;
  double det_err;
};

struct DriftReport {
  std::vector<DriftSample> per_sample;
  double max_ortho_err = 0.0;
  double max_det_err = 0.0;
};

// exp(hat(ω dt)) · R
RotationMatrix step_exponential(const RotationMatrix& r, const AngularVelocity& omega, double dt);

// (I + hat(ω dt)) · R, left unprojected.
Mat3 step_euler(const Mat3& r, const AngularVelocity& omega, double dt);

// project_to_so3(step_euler(R, ω, dt))
RotationMatrix step_euler_renorm(const RotationMatrix& r, const AngularVelocity& omega, double dt);

/// Integrates dR/dt = hat(ω(t))R on the grid t0 + k·dt. The exponential
/// stepper evaluates ω at each step midpoint; the Euler steppers at the step
/// start, as explicit Euler does. A span that is not a whole number of steps is truncated to
/// the last full step and flagged in the metadata.
Trajectory propagate(const RotationMatrix& r0, const RateProfile& profile, double dt, Method method);

// Runs each method independently (concurrently under OpenMP); results come
// back sorted by method name.
std::vector<Trajectory> propagate_all(const RotationMatrix& r0, const RateProfile& profile, double dt,
                                      std::vector<Method> methods);

// Per-sample ‖RᵀR − I‖_F and |det R − 1|, computed in parallel.
DriftReport drift_report(const Trajectory& trajectory);

}  // namespace so3kin
