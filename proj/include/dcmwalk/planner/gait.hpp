#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/core/types.hpp"
#include "dcmwalk/dyn/robot_model.hpp"
#include "dcmwalk/dyn/terrain.hpp"

namespace dcmwalk::planner {

enum class SupportType { kSingle, kDouble };

struct GaitParams {
  double t_ss = 0.6;                // single-support duration [s]
  double t_ds = 0.2;                // double-support duration [s]
  double step_length_bound = 0.35;  // clamp on one step displacement [m]
  double delta_z = 0.70;            // nominal CoM height above stance [m]
  double b = std::sqrt(0.70 / 9.81);  // DCM time constant sqrt(delta_z/g) [s]
  double apex = 0.05;               // swing apex clearance above ground [m]
  int n_steps = 4;                  // previewed step count
  double max_speed = 0.5;           // command magnitude limit [m/s]

  double step_time() const { return t_ss + t_ds; }

  void validate(double gravity) const;
  static GaitParams from_config(const Config& cfg, double gravity);
};

// Sole-center pose of a planned landing.
struct Footstep {
  dyn::FootSide foot = dyn::FootSide::kLeft;
  Eigen::Vector3d pose = Eigen::Vector3d::Zero();  // x, z, pitch
};

// Full stepping plan: where both feet are now, which phase the plan enters
// first, and the previewed landing sequence (alternating feet, starting with
// the foot opposite to stance_foot).
struct FootstepPlan {
  SupportType first_phase = SupportType::kDouble;
  Vec2 start_vrp = Vec2::Zero();  // first waypoint when starting in double support
  dyn::FootSide stance_foot = dyn::FootSide::kRight;
  Eigen::Vector3d initial_stance = Eigen::Vector3d::Zero();
  Eigen::Vector3d initial_swing = Eigen::Vector3d::Zero();
  std::vector<Footstep> landings;
};

// Plans a gait-start sequence from standing: the VRP first shifts from the
// midpoint of the feet onto first_stance, then stepping alternates. Landing
// x advances by command * (t_ss + t_ds) per step relative to the opposite
// foot, clamped to the step-length bound. Landing pitch follows the terrain.
// Throws std::out_of_range when |command| exceeds gait.max_speed.
FootstepPlan plan_footsteps(const Eigen::Vector3d& left_sole,
                            const Eigen::Vector3d& right_sole,
                            dyn::FootSide first_stance, double command,
                            const GaitParams& gait,
                            const dyn::Terrain& terrain);

}  // namespace dcmwalk::planner
