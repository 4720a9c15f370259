#pragma once

#include <array>

#include "dcmwalk/dyn/robot_model.hpp"

namespace dcmwalk::dyn {

// World-frame kinematic state of one link.
struct LinkKin {
  double theta = 0.0;   // absolute angle
  double omega = 0.0;   // absolute angular velocity
  Vec2 origin;          // proximal joint position
  Vec2 v_origin;        // velocity of the material point at the origin
  Vec2 com;             // CoM position
  Vec2 v_com;           // CoM velocity
};

struct LinkAcc {
  double domega = 0.0;  // angular acceleration
  Vec2 a_origin;        // acceleration of the material point at the origin
  Vec2 a_com;
};

// Forward kinematics + velocities for all links.
struct Kinematics {
  std::array<LinkKin, kNumLinks> link;

  Vec2 point_on(const RobotModel& m, int link_id, const Vec2& local) const;
  Vec2 point_velocity(int link_id, const Vec2& world_point) const;

  // Contact point positions/velocities (heel L, toe L, heel R, toe R).
  Vec2 contact_point(const RobotModel& m, int cp) const;
  Vec2 contact_velocity(const RobotModel& m, int cp) const;

  // Foot sole-center pose (x, z, pitch) and its time derivative.
  Eigen::Vector3d foot_pose(const RobotModel& m, FootSide side) const;
  Eigen::Vector3d foot_pose_rate(const RobotModel& m, FootSide side) const;
};

Kinematics forward_kinematics(const RobotModel& m, const Vector9d& q,
                              const Vector9d& v);

// Acceleration propagation for a given joint-space acceleration. With a zero
// argument this yields the velocity-product ("J-dot q-dot") terms.
std::array<LinkAcc, kNumLinks> acceleration_pass(const RobotModel& m,
                                                 const Kinematics& kin,
                                                 const Vector9d& qdd);

// Geometric Jacobian (2 x 9) of a world-frame point attached to a link.
Eigen::Matrix<double, 2, 9> point_jacobian(const RobotModel& m,
                                           const Kinematics& kin, int link_id,
                                           const Vec2& world_point);

// Orientation Jacobian row (1 x 9) of a link.
Eigen::Matrix<double, 1, 9> orientation_jacobian(int link_id);

// Foot sole-center pose Jacobian (rows: x, z, pitch).
Eigen::Matrix<double, 3, 9> foot_jacobian(const RobotModel& m,
                                          const Kinematics& kin,
                                          FootSide side);
// Velocity-product term of the foot pose (a_pose when qdd = 0).
Eigen::Vector3d foot_bias_acceleration(const RobotModel& m,
                                       const Kinematics& kin, FootSide side);

// Whole-body CoM.
Vec2 com_position(const RobotModel& m, const Kinematics& kin);
Vec2 com_velocity(const RobotModel& m, const Kinematics& kin);
Eigen::Matrix<double, 2, 9> com_jacobian(const RobotModel& m,
                                         const Kinematics& kin);
Vec2 com_bias_acceleration(const RobotModel& m, const Kinematics& kin);

// Which foot link carries a contact point.
inline int contact_link(int cp) {
  return (cp == kHeelL || cp == kToeL) ? kFootL : kFootR;
}

}  // namespace dcmwalk::dyn
