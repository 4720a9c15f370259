#pragma once

#include <vector>

#include "dcmwalk/dyn/kinematics.hpp"
#include "dcmwalk/dyn/terrain.hpp"

namespace dcmwalk::dyn {

// A point contact force acting on a foot link.
struct ContactWrench {
  int point = -1;        // ContactPointId
  Vec2 position;         // world application point
  double normal = 0.0;   // [N], >= 0
  double tangent = 0.0;  // [N], world x

  Vec2 force() const { return Vec2(tangent, normal); }
};

// Joint-space inertia matrix via the composite-rigid-body algorithm
// (world-frame formulation; subtree composites accumulated leaf to root).
Matrix9d mass_matrix(const RobotModel& m, const Vector9d& q);

// Generalized forces that realize acceleration qdd at state (q, v), gravity
// included: tau_gen = M(q) qdd + h(q, v). Newton-Euler per link, projected
// through the link Jacobians. Joint friction and contacts are not part of
// this (they enter forward dynamics as external generalized forces).
Vector9d inverse_dynamics(const RobotModel& m, const Vector9d& q,
                          const Vector9d& v, const Vector9d& qdd);

// h(q, v): Coriolis/centrifugal + gravity terms.
Vector9d nonlinear_bias(const RobotModel& m, const Vector9d& q,
                        const Vector9d& v);

// Joint friction torque (viscous + tanh-regularized dry friction), one entry
// per actuated joint, sign opposing motion.
Vector6d joint_friction(const RobotModel& m, const Vector9d& v);

// Penalty contact forces for the current kinematic state.
std::vector<ContactWrench> contact_model(const RobotModel& m,
                                         const Kinematics& kin,
                                         const Terrain& terrain,
                                         const ContactParams& params);

// Solves M qdd = S tau + J^T f + S tau_friction - h. `tau` are the six joint
// torques as delivered by the plant (already scaled/clamped by the caller).
Vector9d forward_dynamics(const RobotModel& m, const Vector9d& q,
                          const Vector9d& v, const Vector6d& tau,
                          const std::vector<ContactWrench>& contacts);

// Generalized force of a set of contact wrenches.
Vector9d contact_generalized_force(const RobotModel& m, const Kinematics& kin,
                                   const std::vector<ContactWrench>& contacts);

// Total mechanical energy (kinetic + gravitational potential), used by the
// integrator validation tests.
double total_energy(const RobotModel& m, const Vector9d& q, const Vector9d& v);

}  // namespace dcmwalk::dyn
