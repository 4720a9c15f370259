#include "dcmwalk/wbc/qp_builder.hpp"

#include <stdexcept>

#include "dcmwalk/dyn/kinematics.hpp"

namespace dcmwalk::wbc {

namespace {

// Accumulates w * ||A_rows * qdd - y||^2 into the cost, where A_rows acts on
// the qdd block only.
void add_task(Eigen::MatrixXd& H, Eigen::VectorXd& g,
              const Eigen::MatrixXd& rows, const Eigen::VectorXd& y,
              double w) {
  H.topLeftCorner(9, 9) += 2.0 * w * rows.transpose() * rows;
  g.head(9) -= 2.0 * w * rows.transpose() * y;
}

}  // namespace

WbcQp build_wbc_qp(const dyn::RobotModel& model, const Vector9d& q,
                   const Vector9d& v, const WbcCommand& cmd,
                   const WbcGains& gains) {
  if (!cmd.stance[dyn::kLeft] && !cmd.stance[dyn::kRight])
    throw std::invalid_argument("build_wbc_qp: no stance foot");

  const auto kin = dyn::forward_kinematics(model, q, v);

  WbcQp out;
  for (int side = 0; side < 2; ++side) {
    if (!cmd.stance[side]) continue;
    out.contact_points.push_back(side == dyn::kLeft ? dyn::kHeelL
                                                    : dyn::kHeelR);
    out.contact_points.push_back(side == dyn::kLeft ? dyn::kToeL : dyn::kToeR);
  }
  const int npts = static_cast<int>(out.contact_points.size());
  const int nf = 2 * npts;
  const int n = 9 + nf + 6;
  const int n_stance = (cmd.stance[dyn::kLeft] ? 1 : 0) +
                       (cmd.stance[dyn::kRight] ? 1 : 0);
  const int me = 9 + 3 * n_stance;
  const int mi = 3 * npts + 12;

  qp::QpProblem& p = out.problem;
  p.H.setZero(n, n);
  p.g.setZero(n);
  p.A.setZero(me, n);
  p.b.setZero(me);
  p.C.setZero(mi, n);
  p.d.setZero(mi);

  // Dynamics rows: M qdd - J^T f - S^T tau = -h + S^T tau_friction. Joint
  // friction at the current velocity is treated as known and compensated, so
  // the returned tau is what the motors must add on top of it.
  const Matrix9d M = dyn::mass_matrix(model, q);
  const Vector9d h = dyn::nonlinear_bias(model, q, v);
  const Vector6d fric = dyn::joint_friction(model, v);

  p.A.topLeftCorner(9, 9) = M;
  for (int i = 0; i < npts; ++i) {
    const int cp = out.contact_points[i];
    const Eigen::Matrix<double, 2, 9> J = dyn::point_jacobian(
        model, kin, dyn::contact_link(cp), kin.contact_point(model, cp));
    p.A.block<9, 2>(0, 9 + 2 * i) = -J.transpose();
  }
  p.A.block<6, 6>(3, 9 + nf) = -Eigen::Matrix<double, 6, 6>::Identity();
  p.b.head(9) = -h;
  p.b.segment<6>(3) += fric;

  // Stance soles: decelerate any residual sole motion, J qdd = -Jdot qdot
  // - kd * (J qdot).
  int row = 9;
  for (int side = 0; side < 2; ++side) {
    if (!cmd.stance[side]) continue;
    const auto foot = static_cast<dyn::FootSide>(side);
    const Eigen::Matrix<double, 3, 9> J = dyn::foot_jacobian(model, kin, foot);
    p.A.block<3, 9>(row, 0) = J;
    p.b.segment<3>(row) = -dyn::foot_bias_acceleration(model, kin, foot) -
                          cmd.stance_damping[side] * (J * v);
    row += 3;
  }

  // Unilateral + friction cone per contact point.
  int r = 0;
  for (int i = 0; i < npts; ++i) {
    const int fx = 9 + 2 * i;
    const int fz = fx + 1;
    p.C(r, fz) = -1.0;
    p.C(r + 1, fx) = 1.0;
    p.C(r + 1, fz) = -cmd.mu;
    p.C(r + 2, fx) = -1.0;
    p.C(r + 2, fz) = -cmd.mu;
    r += 3;
  }
  const Vector6d lim = model.torque_limits();
  for (int i = 0; i < 6; ++i) {
    p.C(r, 9 + nf + i) = 1.0;
    p.d(r) = lim(i);
    p.C(r + 1, 9 + nf + i) = -1.0;
    p.d(r + 1) = lim(i);
    r += 2;
  }

  // CoM force task, in force units so the weight trades off against the
  // acceleration-unit tasks at the intended ratio.
  const double mass = model.total_mass();
  const Eigen::Matrix<double, 2, 9> Jcom = dyn::com_jacobian(model, kin);
  const Vec2 ccom = dyn::com_bias_acceleration(model, kin);
  add_task(p.H, p.g, mass * Jcom, cmd.com_force - mass * ccom, gains.w_com);

  // Swing sole tracking: critically damped PD around the reference motion.
  if (cmd.swing_task) {
    const Eigen::Matrix<double, 3, 9> Jsw =
        dyn::foot_jacobian(model, kin, cmd.swing_foot);
    const Eigen::Vector3d pose = kin.foot_pose(model, cmd.swing_foot);
    const Eigen::Vector3d rate = kin.foot_pose_rate(model, cmd.swing_foot);
    const double wn = gains.omega_foot;
    const Eigen::Vector3d a_des = cmd.swing_acc +
                                  2.0 * wn * (cmd.swing_vel - rate) +
                                  wn * wn * (cmd.swing_pos - pose);
    add_task(p.H, p.g, Jsw,
             a_des - dyn::foot_bias_acceleration(model, kin, cmd.swing_foot),
             gains.w_foot);
  }

  // Torso pitch PD toward the reference orientation.
  {
    Eigen::MatrixXd rowsel = Eigen::MatrixXd::Zero(1, 9);
    rowsel(0, 2) = 1.0;
    const double wt = gains.omega_torso;
    Eigen::VectorXd y(1);
    y(0) = wt * wt * (cmd.torso_pitch_ref - q(2)) - 2.0 * wt * v(2);
    add_task(p.H, p.g, rowsel, y, gains.w_torso);
  }

  // Regularization keeps the Hessian positive definite and resolves the
  // heel/toe force split.
  for (int i = 0; i < 9; ++i) p.H(i, i) += 2.0 * gains.w_reg_qdd;
  for (int i = 0; i < nf; ++i) p.H(9 + i, 9 + i) += 2.0 * gains.w_reg_force;
  for (int i = 0; i < 6; ++i)
    p.H(9 + nf + i, 9 + nf + i) += 2.0 * gains.w_reg_tau;

  return out;
}

Vector6d gravity_compensation(const dyn::RobotModel& model,
                              const Vector9d& q) {
  const Vector9d tau_gen =
      dyn::inverse_dynamics(model, q, Vector9d::Zero(), Vector9d::Zero());
  const Vector6d lim = model.torque_limits();
  return tau_gen.tail<6>().cwiseMax(-lim).cwiseMin(lim);
}

}  // namespace dcmwalk::wbc
