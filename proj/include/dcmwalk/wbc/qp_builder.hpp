#pragma once

#include <array>
#include <vector>

#include "dcmwalk/dyn/dynamics.hpp"
#include "dcmwalk/qp/solver.hpp"
#include "dcmwalk/wbc/gains.hpp"

namespace dcmwalk::wbc {

// Everything the torque QP needs at one instant, already resolved by the
// DCM layer: desired net CoM force, which feet carry load, and the swing
// task reference.
struct WbcCommand {
  Vec2 com_force = Vec2::Zero();

  std::array<bool, 2> stance = {true, true};  // indexed by FootSide
  std::array<double, 2> stance_damping = {0.0, 0.0};

  bool swing_task = false;
  dyn::FootSide swing_foot = dyn::kLeft;
  Eigen::Vector3d swing_pos = Eigen::Vector3d::Zero();
  Eigen::Vector3d swing_vel = Eigen::Vector3d::Zero();
  Eigen::Vector3d swing_acc = Eigen::Vector3d::Zero();

  double torso_pitch_ref = 0.0;
  double mu = 0.6;
};

// Assembled torque QP. Decision vector x = [qdd (9) | contact forces
// (fx, fz per point) | tau (6)]. Equalities: full dynamics and a
// zero-acceleration (velocity-bleeding) constraint per stance sole.
// Inequalities: unilateral normals, friction cone per contact point (heel
// and toe separately, which keeps the center of pressure inside the sole),
// torque limits.
struct WbcQp {
  qp::QpProblem problem;
  std::vector<int> contact_points;  // ContactPointId per force pair

  int nf() const { return 2 * static_cast<int>(contact_points.size()); }

  Vector9d qdd(const Eigen::VectorXd& x) const { return x.head<9>(); }
  Vector6d tau(const Eigen::VectorXd& x) const { return x.tail<6>(); }
  Eigen::VectorXd forces(const Eigen::VectorXd& x) const {
    return x.segment(9, nf());
  }

  // Violation of the dynamics + stance equality rows at a candidate point.
  double equality_residual(const Eigen::VectorXd& x) const {
    return (problem.A * x - problem.b).lpNorm<Eigen::Infinity>();
  }
};

// Throws std::invalid_argument when cmd marks no stance foot (ballistic
// flight has no torque QP; the controller handles that case separately).
WbcQp build_wbc_qp(const dyn::RobotModel& model, const Vector9d& q,
                   const Vector9d& v, const WbcCommand& cmd,
                   const WbcGains& gains);

// Gravity-compensation fallback torques (actuated part of the generalized
// gravity force at rest), clamped to the model limits.
Vector6d gravity_compensation(const dyn::RobotModel& model, const Vector9d& q);

}  // namespace dcmwalk::wbc
