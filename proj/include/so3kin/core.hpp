#pragma once

#include <Eigen/Dense>

#include "so3kin/error.hpp"

namespace so3kin {

using Vec3 = Eigen::Vector3d;
// Row-major so that data() walks r11, r12, ..., r33 in serialization order.
using Mat3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;

struct ToleranceConfig {
  double ortho_tol = 1e-9;
  double det_tol = 1e-9;
  double small_angle_tol = 1e-7;  // radians

  // Throws InvalidConfig unless every field is in (0, 1e-2).
  void check() const;
};

bool is_finite(const Vec3& v);
bool is_finite(const Mat3& m);
void require_finite(const Vec3& v, const char* what);
void require_finite(const Mat3& m, const char* what);

// ‖mᵀm − I‖_F
double orthogonality_error(const Mat3& m);
// |det(m) − 1|
double determinant_error(const Mat3& m);

/// An element of SO(3).
///
/// Only obtainable through validate(), so every live value satisfies both
/// the orthogonality and determinant tolerances it was checked against.
class RotationMatrix {
 public:
  static RotationMatrix validate(const Mat3& m, const ToleranceConfig& tol = {});
  static RotationMatrix identity();

  const Mat3& matrix() const noexcept { return m_; }
  // Rᵀ, re-validated under the default tolerances.
  RotationMatrix transpose() const;

  friend bool operator==(const RotationMatrix& a, const RotationMatrix& b) { return a.m_ == b.m_; }

 private:
  explicit RotationMatrix(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

/// 3×3 skew-symmetric matrix stored as the vector it is the hat-image of.
class SkewMatrix {
 public:
  explicit SkewMatrix(const Vec3& v) : v_(v) {}

  // Accepts m only if m + mᵀ and the diagonal vanish to within tol (absolute, max-entry).
  static SkewMatrix from_matrix(const Mat3& m, double tol);

  const Vec3& vector() const noexcept { return v_; }
  Mat3 matrix() const;

 private:
  Vec3 v_;
};

/// Orthonormal right-handed triad expressed in a common ambient frame.
class Frame {
 public:
  // DegenerateFrame for non-unit or non-orthogonal axes, NotProperRotation for a left-handed triad.
  static Frame make(const Vec3& i, const Vec3& j, const Vec3& k, const ToleranceConfig& tol = {});
  static Frame canonical();

  const Vec3& i() const noexcept { return i_; }
  const Vec3& j() const noexcept { return j_; }
  const Vec3& k() const noexcept { return k_; }
  const Vec3& axis(int n) const;

 private:
  Frame(const Vec3& i, const Vec3& j, const Vec3& k) : i_(i), j_(j), k_(k) {}
  Vec3 i_, j_, k_;
};

RotationMatrix validate_rotation(const Mat3& m, const ToleranceConfig& tol = {});

// Nearest rotation in Frobenius norm via the polar fixed-point iteration
// X ← ½(X + X⁻ᵀ), stopped at ‖ΔX‖_F ≤ 1e-15 or after 100 iterations.
RotationMatrix project_to_so3(const Mat3& m, const ToleranceConfig& tol = {});

}  // namespace so3kin
