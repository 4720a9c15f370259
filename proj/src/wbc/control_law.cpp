#include "dcmwalk/wbc/control_law.hpp"

#include <stdexcept>

namespace dcmwalk::wbc {

Vec2 dcm_control_law(const Vec2& xi, const Vec2& xi_ref, const Vec2& vrp_ref,
                     const Eigen::Matrix2d& k_xi, double b) {
  if (b <= 0.0) throw std::invalid_argument("dcm_control_law: b must be > 0");
  return vrp_ref + (Eigen::Matrix2d::Identity() + b * k_xi) * (xi - xi_ref);
}

Vec2 com_force(const Vec2& com, const Vec2& vrp_cmd, double mass, double b) {
  if (b <= 0.0) throw std::invalid_argument("com_force: b must be > 0");
  return mass / (b * b) * (com - vrp_cmd);
}

}  // namespace dcmwalk::wbc
