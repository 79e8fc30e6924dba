#pragma once

#include "so3kin/core.hpp"

namespace so3kin {

/// Triple of small rotation angles (radians) about the fixed x, y, z axes.
struct InfinitesimalRotation {
  Vec3 dphi = Vec3::Zero();
};

/// Finite rotation vector: direction is the axis, norm is the angle in radians.
struct AxisAngle {
  Vec3 phi = Vec3::Zero();
};

enum class Axis { X, Y, Z };

SkewMatrix hat(const Vec3& v);
Vec3 vee(const SkewMatrix& s);

RotationMatrix elementary_rotation(Axis axis, double angle);

// Entry (r, c) is target.axis(c) · reference.axis(r).
RotationMatrix rotation_from_frames(const Frame& target, const Frame& reference);

// Rotation `first` followed by rotation `second`, both about the fixed frame: second · first.
RotationMatrix compose_fixed(const RotationMatrix& first, const RotationMatrix& second);

// I + hat(dφ). Orthogonal to first order only, hence a plain Mat3.
Mat3 infinitesimal_rotation(const InfinitesimalRotation& d);

InfinitesimalRotation compose_infinitesimal(const InfinitesimalRotation& d1,
                                            const InfinitesimalRotation& d2);

/// Rodrigues' formula. Below tol.small_angle_tol the sin/cos coefficients are
/// replaced by their Taylor expansions.
RotationMatrix exp_so3(const AxisAngle& phi, const ToleranceConfig& tol = {});

// exp_so3(φ) − I, formed without adding the identity so that small rotations
// keep full relative precision.
Mat3 exp_so3_increment(const AxisAngle& phi, const ToleranceConfig& tol = {});

/// Inverse of exp_so3 with ‖φ‖ ∈ [0, π]. At exactly θ = π the axis is signed so
/// that its first nonzero component is positive.
AxisAngle log_so3(const RotationMatrix& r);

}  // namespace so3kin
