#include "so3kin/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace so3kin {

SkewMatrix hat(const Vec3& v) {
  require_finite(v, "hat argument");
  return SkewMatrix(v);
}

Vec3 vee(const SkewMatrix& s) { return s.vector(); }

RotationMatrix elementary_rotation(Axis axis, double angle) {
  if (!std::isfinite(angle)) throw Error(ErrorCode::NonFinite, "rotation angle is not finite");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 m;
  switch (axis) {
    case Axis::X:
      m << 1, 0, 0,
           0, c, -s,
           0, s, c;
      break;
    case Axis::Y:
      m << c, 0, s,
           0, 1, 0,
           -s, 0, c;
      break;
    case Axis::Z:
      m << c, -s, 0,
           s, c, 0,
           0, 0, 1;
      break;
  }
  return RotationMatrix::validate(m);
}

RotationMatrix rotation_from_frames(const Frame& target, const Frame& reference) {
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = target.axis(c).dot(reference.axis(r));
  }
  return RotationMatrix::validate(m);
}

RotationMatrix compose_fixed(const RotationMatrix& first, const RotationMatrix& second) {
  return RotationMatrix::validate(second.matrix() * first.matrix());
}

Mat3 infinitesimal_rotation(const InfinitesimalRotation& d) {
  require_finite(d.dphi, "infinitesimal rotation");
  const Vec3& p = d.dphi;
  Mat3 m;
  m << 1.0, -p.z(), p.y(),
       p.z(), 1.0, -p.x(),
       -p.y(), p.x(), 1.0;
  return m;
}

InfinitesimalRotation compose_infinitesimal(const InfinitesimalRotation& d1,
                                            const InfinitesimalRotation& d2) {
  require_finite(d1.dphi, "first infinitesimal rotation");
  require_finite(d2.dphi, "second infinitesimal rotation");
  InfinitesimalRotation sum{d1.dphi + d2.dphi};
  require_finite(sum.dphi, "composed infinitesimal rotation");
  return sum;
}

Mat3 exp_so3_increment(const AxisAngle& phi, const ToleranceConfig& tol) {
  require_finite(phi.phi, "rotation vector");
  const Mat3 k = hat(phi.phi).matrix();
  const double theta2 = phi.phi.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a;
  double b;
  if (theta < tol.small_angle_tol) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    // Half-angle form of (1 − cos θ)/θ²; the direct difference cancels for small θ.
    const double half = std::sin(0.5 * theta) / theta;
    a = std::sin(theta) / theta;
    b = 2.0 * half * half;
  }
  return a * k + b * (k * k);
}

RotationMatrix exp_so3(const AxisAngle& phi, const ToleranceConfig& tol) {
  return RotationMatrix::validate(Mat3::Identity() + exp_so3_increment(phi, tol), tol);
}

AxisAngle log_so3(const RotationMatrix& r) {
  const Mat3& m = r.matrix();
  // 2 sin θ · n
  const Vec3 skew(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  const double sin_theta = 0.5 * skew.norm();
  const double cos_theta = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
  const double theta = std::atan2(sin_theta, cos_theta);

  if (theta < 1e-8) {
    // θ/(2 sin θ) → 1/2 + θ²/12
    return {(0.5 + theta * theta / 12.0) * skew};
  }
  if (cos_theta > -0.5) {
    return {(theta / (2.0 * sin_theta)) * skew};
  }

  // Near π the skew part vanishes; read the axis from the symmetric part
  // (R + Rᵀ)/2 − cos θ I = (1 − cos θ) n nᵀ and take its sign from the skew part.
  const Mat3 sym = 0.5 * (m + m.transpose()) - cos_theta * Mat3::Identity();
  const Mat3 nnt = sym / (1.0 - cos_theta);
  int col = 0;
  nnt.diagonal().maxCoeff(&col);
  Vec3 n = nnt.col(col) / std::sqrt(std::max(nnt(col, col), 0.0));
  n.normalize();
  if (n.dot(skew) < 0.0) n = -n;

  if (sin_theta == 0.0 || theta == std::numbers::pi) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(n(i)) > 1e-12) {
        if (n(i) < 0.0) n = -n;
        break;
      }
    }
  }
  return {theta * n};
}

}  // namespace so3kin
