#include "dcmwalk/planner/gait.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcmwalk::planner {

void GaitParams::validate(double gravity) const {
  if (t_ss <= 0.0 || t_ds <= 0.0)
    throw std::invalid_argument("gait: phase durations must be positive");
  if (n_steps < 2)
    throw std::invalid_argument("gait: preview needs at least two steps");
  if (delta_z <= 0.0 || step_length_bound <= 0.0 || max_speed <= 0.0)
    throw std::invalid_argument("gait: lengths and speed limit must be positive");
  if (apex < 0.0) throw std::invalid_argument("gait: apex must be nonnegative");
  if (std::abs(b - std::sqrt(delta_z / gravity)) > 1e-12)
    throw std::invalid_argument("gait: time constant b inconsistent with CoM height");
}

GaitParams GaitParams::from_config(const Config& cfg, double gravity) {
  GaitParams p;
  p.t_ss = cfg.get_double("gait.t_ss", p.t_ss);
  p.t_ds = cfg.get_double("gait.t_ds", p.t_ds);
  p.step_length_bound = cfg.get_double("gait.step_length_bound", p.step_length_bound);
  p.delta_z = cfg.get_double("gait.com_height", p.delta_z);
  p.apex = cfg.get_double("gait.apex", p.apex);
  p.n_steps = cfg.get_int("gait.n_steps", p.n_steps);
  p.max_speed = cfg.get_double("gait.max_speed", p.max_speed);
  p.b = std::sqrt(p.delta_z / gravity);
  p.validate(gravity);
  return p;
}

FootstepPlan plan_footsteps(const Eigen::Vector3d& left_sole,
                            const Eigen::Vector3d& right_sole,
                            dyn::FootSide first_stance, double command,
                            const GaitParams& gait,
                            const dyn::Terrain& terrain) {
  if (std::abs(command) > gait.max_speed)
    throw std::out_of_range("plan_footsteps: command exceeds speed limit");

  const bool stance_is_left = first_stance == dyn::FootSide::kLeft;
  FootstepPlan plan;
  plan.first_phase = SupportType::kDouble;
  plan.stance_foot = first_stance;
  plan.initial_stance = stance_is_left ? left_sole : right_sole;
  plan.initial_swing = stance_is_left ? right_sole : left_sole;
  plan.start_vrp = Vec2(0.5 * (left_sole.x() + right_sole.x()),
                        0.5 * (left_sole.z() + right_sole.z()) + gait.delta_z);

  const double step = std::clamp(command * gait.step_time(),
                                 -gait.step_length_bound, gait.step_length_bound);
  dyn::FootSide swing = dyn::other(first_stance);
  double support_x = plan.initial_stance.x();
  plan.landings.reserve(gait.n_steps);
  for (int k = 0; k < gait.n_steps; ++k) {
    const double x = support_x + step;
    Footstep fs;
    fs.foot = swing;
    fs.pose = Eigen::Vector3d(x, terrain.height(x), std::atan(terrain.slope(x)));
    plan.landings.push_back(fs);
    support_x = x;
    swing = dyn::other(swing);
  }
  return plan;
}

}  // namespace dcmwalk::planner
