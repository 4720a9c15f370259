#pragma once

#include <Eigen/Dense>

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/core/types.hpp"

namespace dcmwalk::policy {

inline constexpr int kActionDim = 6;

// Actor observation: noisy joint positions and velocities, base controller
// torque, last applied torque, and the base controller's tracking errors.
// 6 + 6 + 6 + 6 + 2 + 3.
inline constexpr int kObservationDim = 29;

// Critic observation: the actor observation followed by true base velocities
// (linear x/z + angular), true joint states, the privileged controller's
// torque and its tracking errors. 29 + 2 + 1 + 6 + 6 + 6 + 2 + 3.
inline constexpr int kPrivilegedDim = 55;

// Per-group input scaling keeps network inputs around unit magnitude.
struct ObsScales {
  double joint_pos = 1.0;
  double joint_vel = 0.1;
  double torque = 0.02;
  double dcm_error = 5.0;
  double foot_error = 5.0;
  double base_vel = 1.0;

  void validate() const;
  static ObsScales from_config(const Config& cfg);
};

// Assembles the actor observation from one control tick. q/v are full
// configuration vectors (base + joints) as measured, before filtering;
// only the joint entries enter the observation.
Eigen::VectorXd build_observation(const Vector9d& q_noisy,
                                  const Vector9d& v_noisy,
                                  const Vector6d& tau_base,
                                  const Vector6d& tau_prev, const Vec2& e_xi,
                                  const Eigen::Vector3d& e_foot,
                                  const ObsScales& scales);

// Extends an already-built actor observation with ground-truth quantities.
// The first kObservationDim entries are copied verbatim so the actor
// observation is a strict prefix by construction.
Eigen::VectorXd build_privileged(const Eigen::VectorXd& observation,
                                 const Vector9d& q_true,
                                 const Vector9d& v_true,
                                 const Vector6d& tau_privileged,
                                 const Vec2& e_xi,
                                 const Eigen::Vector3d& e_foot,
                                 const ObsScales& scales);

}  // namespace dcmwalk::policy
