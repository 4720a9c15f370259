#include "dcmwalk/planner/vrp_plan.hpp"

#include <numeric>
#include <stdexcept>

namespace dcmwalk::planner {

double VrpPlan::horizon() const {
  return std::accumulate(durations.begin(), durations.end(), 0.0);
}

void VrpPlan::validate() const {
  const int n = static_cast<int>(waypoints.size());
  if (n < 2) throw std::invalid_argument("vrp plan: needs at least two waypoints");
  if (n_phases() != n - 1 || types.size() != durations.size() ||
      stance.size() != durations.size())
    throw std::invalid_argument("vrp plan: phase array sizes inconsistent");
  for (double d : durations)
    if (d <= 0.0) throw std::invalid_argument("vrp plan: phase duration <= 0");
  for (int i = 1; i < n_phases(); ++i)
    if (types[i] == types[i - 1])
      throw std::invalid_argument("vrp plan: support types must alternate");
}

VrpPlan vrp_waypoints(const FootstepPlan& plan, const GaitParams& gait) {
  const int n_ss = static_cast<int>(plan.landings.size());
  if (n_ss < 2)
    throw std::invalid_argument("vrp_waypoints: needs at least two footsteps");

  // Stance soles for the single-support phases: the current stance foot, then
  // each landing in turn (the last landing only closes the terminal pair).
  std::vector<Footstep> stances(n_ss);
  stances[0].foot = plan.stance_foot;
  stances[0].pose = plan.initial_stance;
  for (int k = 1; k < n_ss; ++k) stances[k] = plan.landings[k - 1];

  auto above = [&](const Eigen::Vector3d& sole) {
    return Vec2(sole.x(), sole.z() + gait.delta_z);
  };

  VrpPlan out;
  if (plan.first_phase == SupportType::kDouble) {
    out.waypoints.push_back(plan.start_vrp);
    out.durations.push_back(gait.t_ds);
    out.types.push_back(SupportType::kDouble);
    out.stance.push_back(stances[0].foot);
  }
  for (int k = 0; k < n_ss; ++k) {
    const Vec2 w = above(stances[k].pose);
    out.waypoints.push_back(w);
    out.waypoints.push_back(w);
    out.durations.push_back(gait.t_ss);
    out.types.push_back(SupportType::kSingle);
    out.stance.push_back(stances[k].foot);
    out.durations.push_back(gait.t_ds);
    out.types.push_back(SupportType::kDouble);
    out.stance.push_back(k + 1 < n_ss ? stances[k + 1].foot : stances[k].foot);
  }
  // Terminal stance pair: the last two landings.
  const Eigen::Vector3d& fa = plan.landings[n_ss - 2].pose;
  const Eigen::Vector3d& fb = plan.landings[n_ss - 1].pose;
  out.waypoints.push_back(Vec2(0.5 * (fa.x() + fb.x()),
                               0.5 * (fa.z() + fb.z()) + gait.delta_z));
  out.validate();
  return out;
}

}  // namespace dcmwalk::planner
