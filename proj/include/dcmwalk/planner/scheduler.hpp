#pragma once

#include <string>
#include <vector>

#include "dcmwalk/planner/dcm_trajectory.hpp"
#include "dcmwalk/planner/swing.hpp"

namespace dcmwalk::planner {

// One previewed gait: stepping plan, VRP waypoints, DCM reference and a swing
// trajectory per single-support phase. Immutable once built.
struct GaitPlan {
  FootstepPlan footsteps;
  VrpPlan vrp;
  DcmTrajectory dcm;
  std::vector<FootTrajectory> swings;  // parallel to single-support phases
  std::vector<int> phase_swing;        // phase index -> swing index (-1 for DS)
};

GaitPlan build_gait_plan(const FootstepPlan& footsteps, const GaitParams& gait);

// Everything the controller needs at one control instant.
struct Reference {
  Vec2 xi = Vec2::Zero();
  Vec2 xi_dot = Vec2::Zero();
  Vec2 vrp = Vec2::Zero();
  SupportType support = SupportType::kDouble;
  dyn::FootSide stance_foot = dyn::FootSide::kRight;
  dyn::FootSide swing_foot = dyn::FootSide::kLeft;  // meaningful in single support
  Eigen::Vector3d swing_pos = Eigen::Vector3d::Zero();
  Eigen::Vector3d swing_vel = Eigen::Vector3d::Zero();
  Eigen::Vector3d swing_acc = Eigen::Vector3d::Zero();
  Eigen::Vector3d swing_target = Eigen::Vector3d::Zero();  // planned landing sole pose
  double phase_time = 0.0;
  double phase_duration = 0.0;
};

// Phase clock over rolling previewed plans. The plan is rebuilt at every
// phase boundary from the measured sole poses, so planned and actual foot
// placements never drift apart; within a phase the reference is frozen.
class GaitScheduler {
 public:
  GaitScheduler(const GaitParams& gait, const dyn::Terrain& terrain);

  // Starts a fresh gait from standing; the VRP first shifts onto first_stance.
  void reset(double t, const Eigen::Vector3d& left_sole,
             const Eigen::Vector3d& right_sole, dyn::FootSide first_stance);

  void set_command(double vx) { command_ = vx; }
  double command() const { return command_; }

  // Advances the clock to t (monotone), replanning across any crossed phase
  // boundaries, and returns the active reference.
  Reference update(double t, const Eigen::Vector3d& left_sole,
                   const Eigen::Vector3d& right_sole);

  const GaitPlan& plan() const { return plan_; }
  double plan_start_time() const { return t0_; }
  const GaitParams& gait() const { return gait_; }

 private:
  void advance_phase(double boundary_t, const Eigen::Vector3d& left_sole,
                     const Eigen::Vector3d& right_sole);

  GaitParams gait_;
  dyn::Terrain terrain_;
  GaitPlan plan_;
  double t0_ = 0.0;
  double command_ = 0.0;
  bool initialized_ = false;
};

// Samples the reference at step dt and writes t, DCM, VRP, contact count and
// swing sole pose rows for plotting.
void export_reference_csv(const std::string& path, const GaitPlan& plan,
                          double dt);

}  // namespace dcmwalk::planner
