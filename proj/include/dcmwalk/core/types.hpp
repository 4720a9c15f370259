#pragma once

#include <Eigen/Dense>

namespace dcmwalk {

using Vec2 = Eigen::Vector2d;
using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector9d = Eigen::Matrix<double, 9, 1>;
using Matrix9d = Eigen::Matrix<double, 9, 9>;

// perp(a) = z_hat x a in the sagittal plane: rotates a vector +90 degrees.
inline Vec2 perp(const Vec2& a) { return Vec2(-a.y(), a.x()); }

// Planar cross product a x b (scalar, out-of-plane component).
inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

inline Eigen::Matrix2d rot2(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

}  // namespace dcmwalk
