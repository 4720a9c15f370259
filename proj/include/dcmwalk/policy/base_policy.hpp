#pragma once

#include "dcmwalk/wbc/controller.hpp"
#include "dcmwalk/wbc/state_filter.hpp"

namespace dcmwalk::policy {

// Deployable model-based controller: sees only measured (noisy) state, runs a
// first-order low-pass filter over it, and computes torques with the nominal
// robot model and the believed (flat, nominal-friction) terrain.
class BasePolicy {
 public:
  BasePolicy(const dyn::RobotModel& nominal_model, const wbc::WbcGains& gains,
             const dyn::Terrain& believed_terrain,
             const planner::GaitParams& gait, double filter_cutoff_hz = 20.0,
             bool filter_enabled = true);

  void set_command(double forward_velocity) {
    ctrl_.set_command(forward_velocity);
  }
  void set_filter_enabled(bool enabled) { filter_enabled_ = enabled; }
  bool filter_enabled() const { return filter_enabled_; }

  void reset(double t, const Vector9d& q_measured, const Vector9d& v_measured,
             dyn::FootSide first_stance);
  void reset_standing(double t, const Vector9d& q_measured,
                      const Vector9d& v_measured);

  // One 200 Hz control tick on measured state. Tracking errors in the output
  // are the controller's own (filtered-state) errors.
  wbc::WbcOutput tick(double t, const Vector9d& q_measured,
                      const Vector9d& v_measured);

  const Vector9d& filtered_q() const { return filter_.q(); }
  const Vector9d& filtered_v() const { return filter_.v(); }
  wbc::WbcController& controller() { return ctrl_; }
  const wbc::WbcController& controller() const { return ctrl_; }

 private:
  wbc::StateFilter filter_;
  wbc::WbcController ctrl_;
  bool filter_enabled_;
  double prev_t_ = 0.0;
  bool have_prev_t_ = false;
};

}  // namespace dcmwalk::policy
