#include "dcmwalk/planner/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

#include "dcmwalk/core/csv.hpp"

namespace dcmwalk::planner {

GaitPlan build_gait_plan(const FootstepPlan& footsteps, const GaitParams& gait) {
  GaitPlan plan;
  plan.footsteps = footsteps;
  plan.vrp = vrp_waypoints(footsteps, gait);
  plan.dcm = dcm_backward_pass(plan.vrp, gait);

  const int n_ss = static_cast<int>(footsteps.landings.size());
  plan.swings.reserve(n_ss);
  for (int k = 0; k < n_ss; ++k) {
    // Where the swing foot currently rests: measured poses for the first two
    // phases, its own previous planned landing afterwards.
    Eigen::Vector3d start;
    if (k == 0)
      start = footsteps.initial_swing;
    else if (k == 1)
      start = footsteps.initial_stance;
    else
      start = footsteps.landings[k - 2].pose;
    const Eigen::Vector3d& target = footsteps.landings[k].pose;
    const double apex_z = std::max(start.z(), target.z()) + gait.apex;
    plan.swings.push_back(swing_trajectory(start, target, gait.t_ss, apex_z));
  }

  plan.phase_swing.assign(plan.vrp.n_phases(), -1);
  int s = 0;
  for (int i = 0; i < plan.vrp.n_phases(); ++i)
    if (plan.vrp.types[i] == SupportType::kSingle) plan.phase_swing[i] = s++;
  return plan;
}

GaitScheduler::GaitScheduler(const GaitParams& gait, const dyn::Terrain& terrain)
    : gait_(gait), terrain_(terrain) {}

void GaitScheduler::reset(double t, const Eigen::Vector3d& left_sole,
                          const Eigen::Vector3d& right_sole,
                          dyn::FootSide first_stance) {
  const FootstepPlan fp = plan_footsteps(left_sole, right_sole, first_stance,
                                         command_, gait_, terrain_);
  plan_ = build_gait_plan(fp, gait_);
  t0_ = t;
  initialized_ = true;
}

void GaitScheduler::advance_phase(double boundary_t,
                                  const Eigen::Vector3d& left_sole,
                                  const Eigen::Vector3d& right_sole) {
  const SupportType ending = plan_.vrp.types[0];
  FootstepPlan fp;
  if (ending == SupportType::kSingle) {
    // Touchdown: the swing foot becomes the next stance, and the VRP shifts
    // off the previous stance foot toward it.
    const dyn::FootSide prev_stance = plan_.vrp.stance[0];
    const dyn::FootSide landed = dyn::other(prev_stance);
    const Eigen::Vector3d& prev_sole =
        prev_stance == dyn::kLeft ? left_sole : right_sole;
    fp = plan_footsteps(left_sole, right_sole, landed, command_, gait_,
                        terrain_);
    fp.start_vrp = Vec2(prev_sole.x(), prev_sole.z() + gait_.delta_z);
  } else {
    // The shift is complete; the target foot carries the next swing phase.
    fp = plan_footsteps(left_sole, right_sole, plan_.vrp.stance[0], command_,
                        gait_, terrain_);
    fp.first_phase = SupportType::kSingle;
  }
  plan_ = build_gait_plan(fp, gait_);
  t0_ = boundary_t;
}

Reference GaitScheduler::update(double t, const Eigen::Vector3d& left_sole,
                                const Eigen::Vector3d& right_sole) {
  if (!initialized_)
    throw std::logic_error("gait scheduler: update before reset");
  double local = std::max(0.0, t - t0_);
  while (local >= plan_.vrp.durations[0] - 1e-12) {
    advance_phase(t0_ + plan_.vrp.durations[0], left_sole, right_sole);
    local = std::max(0.0, t - t0_);
  }

  Reference ref;
  const DcmTrajectory::Sample s = plan_.dcm.eval(local);
  ref.xi = s.xi;
  ref.xi_dot = s.xi_dot;
  ref.vrp = s.vrp;
  ref.support = plan_.vrp.types[0];
  ref.stance_foot = plan_.vrp.stance[0];
  ref.swing_foot = plan_.footsteps.landings[0].foot;
  ref.swing_target = plan_.footsteps.landings[0].pose;
  ref.phase_time = local;
  ref.phase_duration = plan_.vrp.durations[0];
  if (ref.support == SupportType::kSingle) {
    plan_.swings[0].eval(local, &ref.swing_pos, &ref.swing_vel, &ref.swing_acc);
  } else {
    // The foot that will swing next is resting on the ground.
    ref.swing_pos = plan_.footsteps.initial_swing;
  }
  return ref;
}

void export_reference_csv(const std::string& path, const GaitPlan& plan,
                          double dt) {
  if (dt <= 0.0) throw std::invalid_argument("export_reference_csv: dt <= 0");
  CsvWriter csv(path, {"t", "xi_x", "xi_z", "xidot_x", "xidot_z", "vrp_x",
                       "vrp_z", "contacts", "swing_x", "swing_z",
                       "swing_pitch"});
  const double horizon = plan.dcm.horizon();
  const int n_ss = static_cast<int>(plan.swings.size());
  for (double t = 0.0; t <= horizon + 0.5 * dt; t += dt) {
    const DcmTrajectory::Sample s = plan.dcm.eval(std::min(t, horizon));
    const int phase = s.phase;
    Eigen::Vector3d pose;
    if (plan.phase_swing[phase] >= 0) {
      const double local = std::min(t, horizon) - plan.dcm.phases()[phase].t_start;
      plan.swings[plan.phase_swing[phase]].eval(local, &pose, nullptr, nullptr);
    } else {
      // Double support: hold the pose of the foot that swings next (or the
      // final landing once the plan has run out of swings).
      int next = -1;
      for (int i = phase + 1; i < plan.vrp.n_phases(); ++i)
        if (plan.phase_swing[i] >= 0) {
          next = plan.phase_swing[i];
          break;
        }
      pose = next >= 0 ? plan.swings[next].start()
                       : plan.swings[n_ss - 1].target();
    }
    const double contacts =
        plan.vrp.types[phase] == SupportType::kSingle ? 1.0 : 2.0;
    csv.row({t, s.xi.x(), s.xi.y(), s.xi_dot.x(), s.xi_dot.y(), s.vrp.x(),
             s.vrp.y(), contacts, pose.x(), pose.y(), pose.z()});
  }
}

}  // namespace dcmwalk::planner
