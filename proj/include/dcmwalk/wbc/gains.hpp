#pragma once

#include <Eigen/Dense>

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/core/types.hpp"

namespace dcmwalk::wbc {

// Controller gains and task weights. Defaults are tuned for stable nominal
// walking of the default model; everything is overridable from the config
// file ([wbc] section).
struct WbcGains {
  // Diagonal DCM feedback gain [1/s].
  Eigen::Matrix2d k_xi = 4.0 * Eigen::Matrix2d::Identity();

  // Task weights. The CoM task is expressed in force units (N), the foot and
  // torso tasks in acceleration units.
  double w_com = 10.0;
  double w_foot = 5.0;
  double w_torso = 1.0;
  double w_reg_tau = 1e-4;
  double w_reg_force = 1e-4;
  double w_reg_qdd = 1e-6;

  // Critically damped PD natural frequencies [rad/s].
  double omega_foot = 20.0;
  double omega_torso = 20.0;

  // Friction coefficient the controller assumes for the contact cone. Kept
  // deliberately conservative; the privileged controller overrides it with
  // the true terrain value.
  double mu = 0.6;

  // Velocity bleed on stance-foot constraints [1/s]: the foot is asked to
  // decelerate any residual sole motion instead of merely not accelerating.
  double stance_damping = 20.0;
  // Stronger bleed for a swing foot promoted to stance on early touchdown.
  double touchdown_damping = 50.0;
  // Swing sole clearance at or below which (in the later half of the phase)
  // the foot is treated as support [m]. Zero means "on believed contact".
  double touchdown_height = 0.0;
  // Both soles above this clearance -> no support, gravity compensation [m].
  double flight_height = 0.08;

  // Workspace QP termination settings.
  double qp_tol = 1e-6;
  int qp_max_iter = 4000;

  // Throws std::invalid_argument on non-positive k_xi diagonal, negative
  // weights or frequencies.
  void validate() const;

  static WbcGains from_config(const Config& cfg);
};

// Believed tracking errors recorded each tick, later consumed by observation
// building and reward evaluation.
struct TrackingErrors {
  Vec2 e_xi = Vec2::Zero();
  Eigen::Vector3d e_foot = Eigen::Vector3d::Zero();  // swing sole (x, z, pitch)
  double e_rot_torso = 0.0;
};

}  // namespace dcmwalk::wbc
