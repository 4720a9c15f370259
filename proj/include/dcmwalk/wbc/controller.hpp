#pragma once

#include "dcmwalk/planner/scheduler.hpp"
#include "dcmwalk/qp/solver.hpp"
#include "dcmwalk/wbc/qp_builder.hpp"

namespace dcmwalk::wbc {

struct WbcOutput {
  Vector6d tau = Vector6d::Zero();  // clamped to the model limits
  TrackingErrors errors;
  Vec2 xi = Vec2::Zero();       // believed DCM
  Vec2 vrp_cmd = Vec2::Zero();  // stabilizer output
  Vec2 com_force_cmd = Vec2::Zero();
  planner::Reference ref;

  qp::QpStatus qp_status = qp::QpStatus::kOptimal;
  int qp_iterations = 0;
  double equality_residual = 0.0;  // dynamics/stance rows at the QP primal
  bool flight = false;    // no believed support, gravity compensation applied
  bool fallback = false;  // torque did not come from a fresh QP solve
  bool promoted = false;  // swing sole treated as support (early touchdown)
};

// Inverse-dynamics walking controller: gait scheduling, DCM stabilization,
// VRP-to-force conversion and a task QP, evaluated on whatever state and
// model the caller believes in. One instance owns one QP workspace; do not
// share a live instance across threads.
class WbcController {
 public:
  WbcController(const dyn::RobotModel& model, const WbcGains& gains,
                const dyn::Terrain& terrain, const planner::GaitParams& gait);

  // Starts a stepping gait from the current (believed) pose.
  void reset(double t, const Vector9d& q, const Vector9d& v,
             dyn::FootSide first_stance);
  // Holds the current stance indefinitely: constant VRP reference at the
  // midpoint of the feet, both soles loaded, no stepping.
  void reset_standing(double t, const Vector9d& q, const Vector9d& v);

  void set_command(double vx) { sched_.set_command(vx); }
  double command() const { return sched_.command(); }

  // One control tick. Calls must be monotone in t after a reset.
  WbcOutput tick(double t, const Vector9d& q, const Vector9d& v);

  const planner::GaitScheduler& scheduler() const { return sched_; }
  const dyn::RobotModel& model() const { return model_; }
  const WbcGains& gains() const { return gains_; }

  // Testing/configuration hook for the workspace QP.
  void set_qp_settings(const qp::QpSettings& s) { qp_settings_ = s; }

 private:
  planner::Reference standing_reference() const;

  dyn::RobotModel model_;
  WbcGains gains_;
  dyn::Terrain terrain_;
  planner::GaitScheduler sched_;
  qp::QpSolver solver_;
  qp::QpSettings qp_settings_;

  bool standing_ = false;
  Vec2 standing_vrp_ = Vec2::Zero();
  planner::Reference standing_ref_;

  bool have_prev_tau_ = false;
  Vector6d prev_tau_ = Vector6d::Zero();
  int consecutive_failures_ = 0;

  // Early-touchdown promotion latch, cleared whenever the plan advances.
  double promoted_plan_t0_ = 0.0;
  bool promoted_ = false;
};

}  // namespace dcmwalk::wbc
