#pragma once

#include <Eigen/Dense>

#include "dcmwalk/core/types.hpp"

namespace dcmwalk::wbc {

// DCM stabilizer: commanded VRP v = v_ref + (I + b K_xi) (xi - xi_ref).
// Substituted into the DCM dynamics xi_dot = (xi - v)/b this closes the loop
// as e_dot = -K_xi e.
Vec2 dcm_control_law(const Vec2& xi, const Vec2& xi_ref, const Vec2& vrp_ref,
                     const Eigen::Matrix2d& k_xi, double b);

// Net CoM force realizing the commanded VRP: F = m/b^2 (x - v). This is the
// total force on the CoM (ground reaction plus gravity), i.e. m times the
// desired CoM acceleration.
Vec2 com_force(const Vec2& com, const Vec2& vrp_cmd, double mass, double b);

}  // namespace dcmwalk::wbc
