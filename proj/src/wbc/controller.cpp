#include "dcmwalk/wbc/controller.hpp"

#include <limits>

#include "dcmwalk/dyn/kinematics.hpp"
#include "dcmwalk/wbc/control_law.hpp"

namespace dcmwalk::wbc {

WbcController::WbcController(const dyn::RobotModel& model,
                             const WbcGains& gains,
                             const dyn::Terrain& terrain,
                             const planner::GaitParams& gait)
    : model_(model), gains_(gains), terrain_(terrain), sched_(gait, terrain) {
  model_.validate();
  gains_.validate();
  gait.validate(model_.gravity);
  qp_settings_.tol = gains_.qp_tol;
  qp_settings_.max_iter = gains_.qp_max_iter;
}

void WbcController::reset(double t, const Vector9d& q, const Vector9d& v,
                          dyn::FootSide first_stance) {
  const auto kin = dyn::forward_kinematics(model_, q, v);
  sched_.reset(t, kin.foot_pose(model_, dyn::kLeft),
               kin.foot_pose(model_, dyn::kRight), first_stance);
  standing_ = false;
  promoted_ = false;
  promoted_plan_t0_ = sched_.plan_start_time();
  have_prev_tau_ = false;
  consecutive_failures_ = 0;
  solver_.reset_warm_start();
}

void WbcController::reset_standing(double t, const Vector9d& q,
                                   const Vector9d& v) {
  (void)t;
  const auto kin = dyn::forward_kinematics(model_, q, v);
  const Eigen::Vector3d left = kin.foot_pose(model_, dyn::kLeft);
  const Eigen::Vector3d right = kin.foot_pose(model_, dyn::kRight);

  // Hold the horizontal DCM where it is (capture) and regulate height to the
  // nominal CoM height above the soles.
  const Vec2 com = dyn::com_position(model_, kin);
  const Vec2 vcom = dyn::com_velocity(model_, kin);
  const Vec2 xi = com + sched_.gait().b * vcom;
  standing_vrp_ = Vec2(
      xi.x(), 0.5 * (left.y() + right.y()) + sched_.gait().delta_z);

  standing_ref_ = planner::Reference{};
  standing_ref_.xi = standing_vrp_;
  standing_ref_.vrp = standing_vrp_;
  standing_ref_.support = planner::SupportType::kDouble;
  standing_ref_.stance_foot = dyn::kRight;
  standing_ref_.swing_foot = dyn::kLeft;
  standing_ref_.swing_pos = left;  // hold pose, drift shows up as e_foot
  standing_ref_.phase_duration = std::numeric_limits<double>::infinity();

  standing_ = true;
  promoted_ = false;
  have_prev_tau_ = false;
  consecutive_failures_ = 0;
  solver_.reset_warm_start();
}

WbcOutput WbcController::tick(double t, const Vector9d& q, const Vector9d& v) {
  const auto kin = dyn::forward_kinematics(model_, q, v);
  const Eigen::Vector3d left = kin.foot_pose(model_, dyn::kLeft);
  const Eigen::Vector3d right = kin.foot_pose(model_, dyn::kRight);

  WbcOutput out;
  if (standing_) {
    out.ref = standing_ref_;
    out.ref.phase_time = t;
  } else {
    out.ref = sched_.update(t, left, right);
    if (sched_.plan_start_time() != promoted_plan_t0_) {
      promoted_ = false;
      promoted_plan_t0_ = sched_.plan_start_time();
    }
  }
  const planner::Reference& ref = out.ref;

  const double b = sched_.gait().b;
  const Vec2 com = dyn::com_position(model_, kin);
  const Vec2 vcom = dyn::com_velocity(model_, kin);
  out.xi = com + b * vcom;
  out.errors.e_xi = out.xi - ref.xi;
  out.errors.e_rot_torso = q(2);

  const Eigen::Vector3d swing_pose =
      (ref.swing_foot == dyn::kLeft) ? left : right;
  out.errors.e_foot = swing_pose - ref.swing_pos;

  out.vrp_cmd = dcm_control_law(out.xi, ref.xi, ref.vrp, gains_.k_xi, b);
  out.com_force_cmd =
      com_force(com, out.vrp_cmd, model_.total_mass(), b);

  // Support decision. Late-phase swing soles near the ground are promoted to
  // stance (early touchdown); if neither sole is anywhere near the ground the
  // robot is ballistic and only gravity compensation makes sense.
  const double clear_l = left.y() - terrain_.height(left.x());
  const double clear_r = right.y() - terrain_.height(right.x());
  if (std::min(clear_l, clear_r) > gains_.flight_height) {
    out.flight = true;
    out.fallback = true;
    out.tau = gravity_compensation(model_, q);
    have_prev_tau_ = false;
    solver_.reset_warm_start();
    return out;
  }

  WbcCommand cmd;
  cmd.com_force = out.com_force_cmd;
  cmd.mu = gains_.mu;
  cmd.torso_pitch_ref = 0.0;
  if (ref.support == planner::SupportType::kSingle) {
    const double swing_clear =
        (ref.swing_foot == dyn::kLeft) ? clear_l : clear_r;
    if (!promoted_ && ref.phase_time > 0.5 * ref.phase_duration &&
        swing_clear <= gains_.touchdown_height) {
      promoted_ = true;
    }
    out.promoted = promoted_;
    cmd.stance = {false, false};
    cmd.stance[ref.stance_foot] = true;
    cmd.stance_damping[ref.stance_foot] = gains_.stance_damping;
    if (promoted_) {
      cmd.stance[ref.swing_foot] = true;
      cmd.stance_damping[ref.swing_foot] = gains_.touchdown_damping;
    } else {
      cmd.swing_task = true;
      cmd.swing_foot = ref.swing_foot;
      cmd.swing_pos = ref.swing_pos;
      cmd.swing_vel = ref.swing_vel;
      cmd.swing_acc = ref.swing_acc;
    }
  } else {
    cmd.stance = {true, true};
    cmd.stance_damping = {gains_.stance_damping, gains_.stance_damping};
  }

  const WbcQp wqp = build_wbc_qp(model_, q, v, cmd, gains_);
  const qp::QpSolution sol = solver_.solve(wqp.problem, qp_settings_);
  out.qp_status = sol.status;
  out.qp_iterations = sol.iterations;

  if (sol.status == qp::QpStatus::kOptimal) {
    const Vector6d lim = model_.torque_limits();
    out.tau = wqp.tau(sol.x).cwiseMax(-lim).cwiseMin(lim);
    out.equality_residual = wqp.equality_residual(sol.x);
    prev_tau_ = out.tau;
    have_prev_tau_ = true;
    consecutive_failures_ = 0;
    return out;
  }

  // Failed solve: hold the previous torque for one tick, then fall back to
  // gravity compensation until the QP recovers.
  ++consecutive_failures_;
  solver_.reset_warm_start();
  out.fallback = true;
  if (consecutive_failures_ == 1 && have_prev_tau_) {
    out.tau = prev_tau_;
  } else {
    out.tau = gravity_compensation(model_, q);
  }
  return out;
}

}  // namespace dcmwalk::wbc
