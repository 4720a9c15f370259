#pragma once

#include <vector>

#include "dcmwalk/planner/vrp_plan.hpp"

namespace dcmwalk::planner {

struct DcmPhase {
  Vec2 v0 = Vec2::Zero();    // VRP at phase start
  Vec2 vT = Vec2::Zero();    // VRP at phase end
  double duration = 0.0;
  Vec2 xi_end = Vec2::Zero();  // DCM boundary value chained backward
  double t_start = 0.0;        // absolute phase start within the plan
  SupportType type = SupportType::kDouble;
  dyn::FootSide stance = dyn::FootSide::kRight;
};

// Piecewise closed-form DCM reference. Within each phase the VRP moves
// linearly from v0 to vT and the DCM follows the exact solution of
// xi_dot = (xi - v)/b that hits xi_end at the phase end. Evaluation clamps
// beyond the horizon to the terminal rest point (xi = v_n, xi_dot = 0).
class DcmTrajectory {
 public:
  struct Sample {
    Vec2 xi = Vec2::Zero();
    Vec2 xi_dot = Vec2::Zero();
    Vec2 vrp = Vec2::Zero();
    int phase = 0;
  };

  DcmTrajectory() = default;
  DcmTrajectory(std::vector<DcmPhase> phases, double b);

  Sample eval(double t) const;
  double horizon() const { return horizon_; }
  double b() const { return b_; }
  const std::vector<DcmPhase>& phases() const { return phases_; }

 private:
  std::vector<DcmPhase> phases_;
  double b_ = 1.0;
  double horizon_ = 0.0;
};

// Chains DCM boundary values backward from the terminal condition
// xi(horizon) = final waypoint, so the reference is continuous and comes to
// rest over the last waypoint.
DcmTrajectory dcm_backward_pass(const VrpPlan& plan, const GaitParams& gait);

}  // namespace dcmwalk::planner
