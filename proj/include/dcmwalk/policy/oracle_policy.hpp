#pragma once

#include "dcmwalk/dr/randomization.hpp"
#include "dcmwalk/wbc/controller.hpp"

namespace dcmwalk::policy {

// Training-only supervisor: runs the same whole-body controller, but on the
// true simulator state with the true randomized model and terrain, and scales
// its output by the inverse motor efficiency so the plant receives exactly
// the intended torque after decay.
class OraclePolicy {
 public:
  // gains.mu is replaced by the true floor friction before construction.
  OraclePolicy(const dyn::RobotModel& true_model, const wbc::WbcGains& gains,
               const dyn::Terrain& true_terrain,
               const planner::GaitParams& gait);

  void set_command(double forward_velocity) {
    ctrl_.set_command(forward_velocity);
  }

  void reset(double t, const Vector9d& q, const Vector9d& v,
             dyn::FootSide first_stance) {
    ctrl_.reset(t, q, v, first_stance);
  }
  void reset_standing(double t, const Vector9d& q, const Vector9d& v) {
    ctrl_.reset_standing(t, q, v);
  }

  // One control tick on the true state. The returned torque is the controller
  // output divided by the current efficiency draw; no re-clamping, so that
  // efficiency * tau reproduces the intended (already limited) torque.
  wbc::WbcOutput tick(double t, const Vector9d& q, const Vector9d& v,
                      const dr::ActuationDraw& draw);

  wbc::WbcController& controller() { return ctrl_; }
  const wbc::WbcController& controller() const { return ctrl_; }

 private:
  wbc::WbcController ctrl_;
};

}  // namespace dcmwalk::policy
