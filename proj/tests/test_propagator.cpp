#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "so3kin/propagator.hpp"
#include "so3kin/reference.hpp"
#include "test_util.hpp"

using namespace so3kin;
using so3kin::testing::error_code_of;
using so3kin::testing::mat;
using so3kin::testing::to_mat3;

namespace {
constexpr double kPi = std::numbers::pi;
const Mat3 kQuarterZ = mat({0, -1, 0, 1, 0, 0, 0, 0, 1});

RateProfile step_profile(Interpolation interp) {
  return RateProfile({{0.0, {Vec3(0, 0, 0)}}, {1.0, {Vec3(0, 0, 2)}}}, interp);
}
}  // namespace

TEST(RateProfile, RejectsBadSamples) {
  EXPECT_EQ(error_code_of([] { RateProfile({}); }), ErrorCode::EmptyProfile);
  EXPECT_EQ(error_code_of([] { RateProfile({{0.0, {}}, {0.0, {}}}); }), ErrorCode::InvalidProfile);
  EXPECT_EQ(error_code_of([] { RateProfile({{1.0, {}}, {0.5, {}}}); }), ErrorCode::InvalidProfile);
  EXPECT_EQ(error_code_of([] { RateProfile({{0.0, {Vec3(NAN, 0, 0)}}}); }), ErrorCode::InvalidProfile);
}

TEST(SampleRate, Policies) {
  const RateProfile single({{0.5, {Vec3(1, 2, 3)}}});
  EXPECT_EQ(sample_rate(single, 0.5).w, Vec3(1, 2, 3));

  EXPECT_EQ(sample_rate(step_profile(Interpolation::Linear), 0.25).w, Vec3(0, 0, 0.5));
  EXPECT_EQ(sample_rate(step_profile(Interpolation::ZeroOrderHold), 0.25).w, Vec3(0, 0, 0));
  for (auto interp : {Interpolation::Linear, Interpolation::ZeroOrderHold}) {
    EXPECT_EQ(sample_rate(step_profile(interp), 0.0).w, Vec3(0, 0, 0));
    EXPECT_EQ(sample_rate(step_profile(interp), 1.0).w, Vec3(0, 0, 2));
    EXPECT_EQ(error_code_of([&] { sample_rate(step_profile(interp), 1.5); }), ErrorCode::OutOfRange);
    EXPECT_EQ(error_code_of([&] { sample_rate(step_profile(interp), -0.1); }), ErrorCode::OutOfRange);
  }
}

TEST(StepExponential, Examples) {
  const auto q = step_exponential(RotationMatrix::identity(), {Vec3(0, 0, 1)}, kPi / 2);
  EXPECT_LE((q.matrix() - kQuarterZ).norm(), 1e-15);

  std::mt19937_64 rng(71);
  const auto r = so3kin::testing::random_rotation(rng);
  EXPECT_EQ(step_exponential(r, {Vec3::Zero()}, 0.37).matrix(), r.matrix());

  const AngularVelocity w{Vec3(0.4, -0.9, 0.3)};
  const auto two_halves = step_exponential(step_exponential(r, w, 0.05), w, 0.05);
  const auto one_step = step_exponential(r, w, 0.1);
  EXPECT_LE((two_halves.matrix() - one_step.matrix()).norm(), 1e-13);
  EXPECT_EQ(error_code_of([&] { step_exponential(r, w, 0.0); }), ErrorCode::BadStep);
}

TEST(StepEuler, Examples) {
  std::mt19937_64 rng(73);
  const Mat3 r = so3kin::testing::random_rotation(rng).matrix();
  EXPECT_EQ(step_euler(r, {Vec3::Zero()}, 0.1), r);
  EXPECT_EQ(step_euler(Mat3::Identity(), {Vec3(0, 0, 1)}, 1e-3), mat({1, -1e-3, 0, 1e-3, 1, 0, 0, 0, 1}));

  // (I+S)ᵀ(I+S) − I = SᵀS, whose Frobenius norm is √2·θ² for a unit-axis rotation of θ.
  const Vec3 w = Vec3(1, -2, 2) / 3.0;
  const Mat3 s = hat(w * 1e-3).matrix();
  const double expected = (s.transpose() * s).norm();
  ASSERT_NEAR(expected, std::numbers::sqrt2 * 1e-6, 1e-15);
  EXPECT_NEAR(orthogonality_error(step_euler(Mat3::Identity(), {w}, 1e-3)), expected, 1e-15);
}

TEST(StepEulerRenorm, Examples) {
  std::mt19937_64 rng(79);
  const auto r = so3kin::testing::random_rotation(rng);
  EXPECT_LE((step_euler_renorm(r, {Vec3::Zero()}, 0.1).matrix() - r.matrix()).norm(), 1e-14);

  const auto renorm = step_euler_renorm(RotationMatrix::identity(), {Vec3(0, 0, 1)}, 1e-3);
  const auto exact = step_exponential(RotationMatrix::identity(), {Vec3(0, 0, 1)}, 1e-3);
  EXPECT_LE((renorm.matrix() - exact.matrix()).norm(), 1e-9);

  std::uniform_real_distribution<double> udt(1e-6, 0.1);
  for (int n = 0; n < 300; ++n) {
    const auto rr = so3kin::testing::random_rotation(rng);
    const auto out = step_euler_renorm(rr, {so3kin::testing::random_vec(rng, 3.0)}, udt(rng));
    EXPECT_LE(orthogonality_error(out.matrix()), 1e-12);
  }
}

TEST(Propagate, ConstantRateQuarterTurn) {
  const auto profile = RateProfile::constant(Vec3(0, 0, 1), 0.0, kPi / 2);
  const auto traj = propagate(RotationMatrix::identity(), profile, kPi / 2000, Method::Exponential);
  ASSERT_EQ(traj.samples.size(), 1001u);
  EXPECT_FALSE(traj.metadata.truncated_span);
  EXPECT_EQ(traj.samples.front().t, 0.0);
  EXPECT_EQ(traj.samples.front().r, Mat3::Identity());
  EXPECT_LE((traj.samples.back().r - kQuarterZ).norm(), 1e-12);
}

TEST(Propagate, StationaryProfile) {
  std::mt19937_64 rng(83);
  const auto r0 = so3kin::testing::random_rotation(rng);
  const auto profile = RateProfile::constant(Vec3::Zero(), 0.0, 1.0);
  for (Method m : {Method::Exponential, Method::Euler, Method::EulerRenorm}) {
    const auto traj = propagate(r0, profile, 0.01, m);
    ASSERT_EQ(traj.samples.size(), 101u);
    for (const auto& s : traj.samples) {
      if (m == Method::EulerRenorm) {
        EXPECT_LE((s.r - r0.matrix()).norm(), 1e-14);
      } else {
        EXPECT_EQ(s.r, r0.matrix());
      }
    }
  }
}

TEST(Propagate, EulerDriftAccumulates) {
  const auto profile = RateProfile::constant(Vec3(0, 0, 1), 0.0, 10.0);
  const auto traj = propagate(RotationMatrix::identity(), profile, 1e-3, Method::Euler);
  ASSERT_EQ(traj.samples.size(), 10001u);
  const double final_err = orthogonality_error(traj.samples.back().r);
  EXPECT_GE(final_err, 1e-4);
  EXPECT_LE(final_err, 1e-1);
  // (1 + dt²)^N − 1 along the rotation plane, times √2.
  EXPECT_NEAR(final_err, std::numbers::sqrt2 * (std::pow(1.0 + 1e-6, 10000) - 1.0), 1e-9);
}

TEST(Propagate, TruncatesPartialStep) {
  const auto profile = RateProfile::constant(Vec3(0, 0, 1), 0.0, 1.05);
  const auto traj = propagate(RotationMatrix::identity(), profile, 0.1, Method::Exponential);
  EXPECT_EQ(traj.samples.size(), 11u);
  EXPECT_TRUE(traj.metadata.truncated_span);
  EXPECT_NEAR(traj.samples.back().t, 1.0, 1e-15);
}

TEST(Propagate, Errors) {
  const auto profile = RateProfile::constant(Vec3(0, 0, 1), 0.0, 1.0);
  EXPECT_EQ(error_code_of([&] { propagate(RotationMatrix::identity(), profile, 0.0, Method::Euler); }),
            ErrorCode::BadStep);
  EXPECT_EQ(error_code_of([&] { propagate(RotationMatrix::identity(), profile, 2.0, Method::Euler); }),
            ErrorCode::BadStep);
  const RateProfile single({{0.0, {Vec3(0, 0, 1)}}});
  EXPECT_EQ(error_code_of([&] { propagate(RotationMatrix::identity(), single, 0.1, Method::Euler); }),
            ErrorCode::BadStep);
}

TEST(Propagate, MidpointRateForLinearProfile) {
  // ω_z(t) = 2t; exact angle at t = 1 is ∫2t dt = 1. Midpoint evaluation integrates linear ω exactly.
  const auto traj = propagate(RotationMatrix::identity(), step_profile(Interpolation::Linear), 0.1,
                              Method::Exponential);
  EXPECT_LE((traj.samples.back().r - to_mat3(oracle::rot_z(1.0))).norm(), 1e-14);
}

TEST(PropagateAll, OrderedByNameAndMatchesSingleRuns) {
  const auto profile = RateProfile::constant(Vec3(0.3, 0.2, -0.8), 0.0, 1.0);
  const auto runs = propagate_all(RotationMatrix::identity(), profile, 0.01,
                                  {Method::Exponential, Method::EulerRenorm, Method::Euler});
  ASSERT_EQ(runs.size(), 3u);
  EXPECT_EQ(runs[0].metadata.method, "euler");
  EXPECT_EQ(runs[1].metadata.method, "euler-renorm");
  EXPECT_EQ(runs[2].metadata.method, "exp");
  for (const auto& run : runs) {
    const auto single = propagate(RotationMatrix::identity(), profile, 0.01, parse_method(run.metadata.method));
    ASSERT_EQ(single.samples.size(), run.samples.size());
    EXPECT_EQ(single.samples.back().r, run.samples.back().r);
  }
}

TEST(DriftReport, Examples) {
  const auto profile = RateProfile::constant(Vec3(0.3, 0.2, -0.8), 0.0, 1.0);
  const auto exact = propagate(RotationMatrix::identity(), profile, 0.01, Method::Exponential);
  EXPECT_LE(drift_report(exact).max_ortho_err, 1e-12);

  Trajectory one;
  Mat3 m = Mat3::Identity();
  m(0, 0) += 1e-6;
  one.samples.push_back({0.0, m});
  // RᵀR − I has a single nonzero entry (1+δ)² − 1 = 2δ + δ².
  const auto rep = drift_report(one);
  EXPECT_NEAR(rep.max_ortho_err, 2e-6 + 1e-12, 1e-15);
  EXPECT_NEAR(rep.max_det_err, 1e-6, 1e-15);

  EXPECT_EQ(error_code_of([] { drift_report(Trajectory{}); }), ErrorCode::TooFewSamples);
}

TEST(DriftReport, ParallelMatchesSerialReference) {
  const auto profile = RateProfile::constant(Vec3(0.5, -0.5, 0.7), 0.0, 5.0);
  const auto traj = propagate(RotationMatrix::identity(), profile, 1e-3, Method::Euler);
  const auto par = drift_report(traj);
  const auto ser = reference::drift_report(traj);
  EXPECT_EQ(par.max_ortho_err, ser.max_ortho_err);
  EXPECT_EQ(par.max_det_err, ser.max_det_err);
  ASSERT_EQ(par.per_sample.size(), ser.per_sample.size());
  for (std::size_t k = 0; k < par.per_sample.size(); ++k) {
    EXPECT_EQ(par.per_sample[k].ortho_err, ser.per_sample[k].ortho_err);
    EXPECT_EQ(par.per_sample[k].det_err, ser.per_sample[k].det_err);
  }
}

TEST(MethodNames, RoundTrip) {
  for (Method m : {Method::Exponential, Method::Euler, Method::EulerRenorm}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_EQ(error_code_of([] { parse_method("rk4"); }), ErrorCode::InvalidConfig);
}

namespace {

RateProfile smooth_profile(double spacing, double tf, double scale = 1.0) {
  std::vector<RateSample> samples;
  const auto n = static_cast<std::size_t>(std::llround(tf / spacing));
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * spacing;
    samples.push_back({t, {scale * Vec3(std::sin(t), std::cos(t), 0.5)}});
  }
  return RateProfile(std::move(samples));
}

double final_geodesic_error(const Mat3& reference, const Mat3& raw) {
  const Mat3 rel = reference * project_to_so3(raw).matrix().transpose();
  return log_so3(validate_rotation(rel)).phi.norm();
}

}  // namespace

TEST(PropagateInvariants, ExponentialStaysOnManifoldForLongRuns) {
  // |ω| = 1.5·√(1.25) ≈ 1.68 ≤ 2
  const auto profile = smooth_profile(1e-2, 10.0, 1.5);
  const auto traj = propagate(RotationMatrix::identity(), profile, 1e-3, Method::Exponential);
  ASSERT_EQ(traj.samples.size(), 10001u);
  const auto drift = drift_report(traj);
  EXPECT_LE(drift.max_ortho_err, 1e-12);
  EXPECT_LE(drift.max_det_err, 1e-12);
}

TEST(PropagateInvariants, ExponentialExactForConstantRate) {
  const Vec3 w(0.4, -1.1, 0.6);
  const auto profile = RateProfile::constant(w, 0.0, 2.0);
  const Mat3 closed = to_mat3(oracle::exp_series(oracle::skew({2 * w.x(), 2 * w.y(), 2 * w.z()}), 40));
  for (double dt : {0.5, 0.1, 1e-2, 1e-3}) {
    const auto traj = propagate(RotationMatrix::identity(), profile, dt, Method::Exponential);
    EXPECT_LE((traj.samples.back().r - closed).norm(), 1e-12) << dt;
  }
}

TEST(PropagateInvariants, EulerRenormKeepsManifoldButStaysFirstOrder) {
  const auto profile = smooth_profile(1e-4, 2.0);
  const Mat3 reference = propagate(RotationMatrix::identity(), profile, 1e-4, Method::Exponential).samples.back().r;
  std::vector<double> errors;
  for (double dt : {1e-2, 5e-3}) {
    const auto traj = propagate(RotationMatrix::identity(), profile, dt, Method::EulerRenorm);
    EXPECT_LE(drift_report(traj).max_ortho_err, 1e-12);
    errors.push_back(final_geodesic_error(reference, traj.samples.back().r));
  }
  EXPECT_NEAR(errors[0] / errors[1], 2.0, 0.3);
}

TEST(PropagateInvariants, ExponentialTrajectoryPassesFiniteDifferenceCheck) {
  const auto profile = smooth_profile(1e-3, 2.0);
  const auto traj = propagate(RotationMatrix::identity(), profile, 1e-3, Method::Exponential);
  const auto study = residual_study(traj, profile, {1e-2, 1e-3});
  ASSERT_TRUE(study.estimated_order.has_value());
  EXPECT_GE(*study.estimated_order, 1.8);
}

TEST(Propagate, ZeroOrderHoldUsesHeldRate) {
  // ZOH over [0,1] holds ω_z = 0 until the final sample, so nothing rotates.
  const auto traj = propagate(RotationMatrix::identity(), step_profile(Interpolation::ZeroOrderHold), 0.1,
                              Method::Exponential);
  EXPECT_EQ(traj.samples.back().r, Mat3::Identity());
}
