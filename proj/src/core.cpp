#include "so3kin/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>
#include <Eigen/LU>

namespace so3kin {

namespace {

constexpr double kPolarStopNorm = 1e-15;
constexpr int kPolarMaxIterations = 100;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Transpose of the cofactor matrix divided by det, i.e. X⁻ᵀ.
Mat3 inverse_transpose(const Mat3& x, double det) {
  Mat3 cof;
  cof(0, 0) = x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1);
  cof(0, 1) = x(1, 2) * x(2, 0) - x(1, 0) * x(2, 2);
  cof(0, 2) = x(1, 0) * x(2, 1) - x(1, 1) * x(2, 0);
  cof(1, 0) = x(0, 2) * x(2, 1) - x(0, 1) * x(2, 2);
  cof(1, 1) = x(0, 0) * x(2, 2) - x(0, 2) * x(2, 0);
  cof(1, 2) = x(0, 1) * x(2, 0) - x(0, 0) * x(2, 1);
  cof(2, 0) = x(0, 1) * x(1, 2) - x(0, 2) * x(1, 1);
  cof(2, 1) = x(0, 2) * x(1, 0) - x(0, 0) * x(1, 2);
  cof(2, 2) = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  return cof / det;
}

}  // namespace

void ToleranceConfig::check() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1e-2; };
  if (!ok(ortho_tol) || !ok(det_tol) || !ok(small_angle_tol)) {
    throw Error(ErrorCode::InvalidConfig, "tolerances must lie in (0, 1e-2)");
  }
}

bool is_finite(const Vec3& v) { return v.allFinite(); }
bool is_finite(const Mat3& m) { return m.allFinite(); }

void require_finite(const Vec3& v, const char* what) {
  if (!v.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has a non-finite component");
}

void require_finite(const Mat3& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has a non-finite entry");
}

double orthogonality_error(const Mat3& m) {
  return (m.transpose() * m - Mat3::Identity()).norm();
}

double determinant_error(const Mat3& m) { return std::abs(m.determinant() - 1.0); }

RotationMatrix RotationMatrix::validate(const Mat3& m, const ToleranceConfig& tol) {
  require_finite(m, "matrix");
  const double ortho = orthogonality_error(m);
  if (ortho > tol.ortho_tol) {
    throw Error(ErrorCode::NotOrthogonal,
                "||RtR - I||_F = " + fmt(ortho) + " exceeds " + fmt(tol.ortho_tol));
  }
  const double det = m.determinant();
  if (std::abs(det - 1.0) > tol.det_tol) {
    throw Error(ErrorCode::NotProperRotation,
                "det = " + fmt(det) + ", |det - 1| exceeds " + fmt(tol.det_tol));
  }
  return RotationMatrix(m);
}

RotationMatrix RotationMatrix::identity() { return RotationMatrix(Mat3::Identity()); }

RotationMatrix RotationMatrix::transpose() const { return validate(m_.transpose()); }

Mat3 SkewMatrix::matrix() const {
  Mat3 s;
  s << 0.0, -v_.z(), v_.y(),
       v_.z(), 0.0, -v_.x(),
       -v_.y(), v_.x(), 0.0;
  return s;
}

SkewMatrix SkewMatrix::from_matrix(const Mat3& m, double tol) {
  require_finite(m, "matrix");
  const double asym = (m + m.transpose()).cwiseAbs().maxCoeff();
  const double diag = m.diagonal().cwiseAbs().maxCoeff();
  if (asym > tol || diag > tol) {
    throw Error(ErrorCode::NotSkew, "max |M + Mt| = " + fmt(asym) + ", max |diag| = " + fmt(diag));
  }
  // Average the mirrored pairs so a slightly noisy input maps to its nearest skew part.
  return SkewMatrix(Vec3(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1))));
}

Frame Frame::make(const Vec3& i, const Vec3& j, const Vec3& k, const ToleranceConfig& tol) {
  require_finite(i, "frame axis i");
  require_finite(j, "frame axis j");
  require_finite(k, "frame axis k");
  for (const Vec3* a : {&i, &j, &k}) {
    if (std::abs(a->norm() - 1.0) > tol.ortho_tol) {
      throw Error(ErrorCode::DegenerateFrame, "axis norm " + fmt(a->norm()) + " is not 1");
    }
  }
  const double worst_dot =
      std::max({std::abs(i.dot(j)), std::abs(j.dot(k)), std::abs(k.dot(i))});
  if (worst_dot > tol.ortho_tol) {
    throw Error(ErrorCode::DegenerateFrame, "axes not orthogonal, |dot| = " + fmt(worst_dot));
  }
  if (i.cross(j).dot(k) < 1.0 - tol.ortho_tol) {
    throw Error(ErrorCode::NotProperRotation, "triad is left-handed");
  }
  return Frame(i, j, k);
}

Frame Frame::canonical() { return Frame(Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()); }

const Vec3& Frame::axis(int n) const {
  switch (n) {
    case 0: return i_;
    case 1: return j_;
    case 2: return k_;
    default: throw Error(ErrorCode::OutOfRange, "frame axis index must be 0, 1 or 2");
  }
}

RotationMatrix validate_rotation(const Mat3& m, const ToleranceConfig& tol) {
  return RotationMatrix::validate(m, tol);
}

RotationMatrix project_to_so3(const Mat3& m, const ToleranceConfig& tol) {
  require_finite(m, "matrix");
  Mat3 x = m;
  double det = x.determinant();
  if (!(det > 0.0) || !std::isnormal(det)) {
    throw Error(ErrorCode::NotProjectable, "det = " + fmt(det) + " is not positive");
  }
  for (int iter = 0; iter < kPolarMaxIterations; ++iter) {
    const Mat3 next = 0.5 * (x + inverse_transpose(x, det));
    const double step = (next - x).norm();
    x = next;
    if (step <= kPolarStopNorm) return RotationMatrix::validate(x, tol);
    det = x.determinant();
    if (!std::isfinite(det) || det <= 0.0) break;
  }
  throw Error(ErrorCode::NoConvergence, "polar iteration did not reach 1e-15 in 100 steps");
}

}  // namespace so3kin
