#pragma once

#include <array>
#include <string>

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/core/types.hpp"

namespace dcmwalk::dyn {

// Planar biped: torso + two 3-link legs (thigh, shank, foot), all motion in
// the sagittal (x up-forward, z up) plane.
//
// Generalized coordinates q (9):
//   0: base x        (hip point, world)
//   1: base z
//   2: torso angle   (CCW in the x-z plane; 0 = upright)
//   3: left hip      (CCW relative to torso; positive swings the leg forward)
//   4: left knee
//   5: left ankle
//   6: right hip
//   7: right knee
//   8: right ankle
//
// Both hip joints sit at the base point. Link frames have their origin at the
// proximal joint; at zero joint angles each leg hangs straight down.

enum LinkId {
  kTorso = 0,
  kThighL,
  kShankL,
  kFootL,
  kThighR,
  kShankR,
  kFootR,
  kNumLinks
};

enum JointId {
  kHipL = 0,
  kKneeL,
  kAnkleL,
  kHipR,
  kKneeR,
  kAnkleR,
  kNumJoints
};

enum FootSide { kLeft = 0, kRight = 1 };

inline FootSide other(FootSide side) { return side == kLeft ? kRight : kLeft; }

// Contact point index: heel/toe of each foot.
enum ContactPointId { kHeelL = 0, kToeL, kHeelR, kToeR, kNumContactPoints };

struct LinkParams {
  double mass = 0.0;       // [kg]
  double inertia = 0.0;    // [kg m^2] about the CoM
  Vec2 com = Vec2::Zero(); // CoM offset in the link frame [m]
};

struct JointParams {
  double damping = 0.0;       // [N m s / rad]
  double dry_friction = 0.0;  // [N m]
  double torque_limit = 0.0;  // [N m]
};

struct RobotModel {
  std::array<LinkParams, kNumLinks> link;
  std::array<JointParams, kNumJoints> joint;

  double thigh_length = 0.4;  // hip -> knee [m]
  double shank_length = 0.4;  // knee -> ankle [m]

  // Foot geometry in the foot frame (origin at the ankle).
  double heel_x = -0.06;
  double toe_x = 0.14;
  double sole_drop = 0.05;  // ankle height above the sole

  double gravity = 9.81;            // [m/s^2], positive down
  double com_height_nominal = 0.70; // nominal standing CoM height [m]

  double total_mass() const;

  // Throws std::invalid_argument when a physical invariant is violated
  // (non-positive mass/inertia/limits, heel not in front of toe, ...).
  void validate() const;

  static RobotModel defaults();
  static RobotModel from_config(const Config& cfg);

  // Link frame helpers ------------------------------------------------------
  static bool is_foot(int link) { return link == kFootL || link == kFootR; }
  // Parent link (torso's parent is the base; encoded as -1).
  static int parent(int link);
  // Joint driving this link (-1 for the torso).
  static int driving_joint(int link);
  // Offset of the link's proximal joint in the parent frame.
  Vec2 joint_offset_in_parent(int link) const;

  Vec2 heel_offset() const { return Vec2(heel_x, -sole_drop); }
  Vec2 toe_offset() const { return Vec2(toe_x, -sole_drop); }
  Vec2 sole_center_offset() const {
    return Vec2(0.5 * (heel_x + toe_x), -sole_drop);
  }

  Vector6d torque_limits() const;
};

struct ContactParams {
  double normal_stiffness = 5.0e4;  // [N/m]
  double normal_damping = 500.0;    // [N s/m]
  double tangent_gain = 1.0e3;      // [N s/m] viscous gain below the cone cap

  static ContactParams from_config(const Config& cfg);
};

}  // namespace dcmwalk::dyn
