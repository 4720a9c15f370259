#include "dcmwalk/dyn/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace dcmwalk::dyn {

void command_torque(SimState& state, const Vector6d& tau, double delay) {
  PendingCommand cmd;
  cmd.release_time = state.t + std::max(0.0, delay);
  cmd.torque = tau;
  // Keep the pipeline sorted by release time; commands are normally issued
  // monotonically so this is an append.
  auto it = std::upper_bound(
      state.pending.begin(), state.pending.end(), cmd,
      [](const PendingCommand& a, const PendingCommand& b) {
        return a.release_time < b.release_time;
      });
  state.pending.insert(it, cmd);
}

namespace {

// Time-weighted average of the piecewise-constant pipeline torque over
// [t, t+dt), then drop everything released inside the window.
Vector6d consume_pipeline(SimState& s, double dt) {
  const double t0 = s.t, t1 = s.t + dt;
  Vector6d integral = Vector6d::Zero();
  double seg_start = t0;
  Vector6d current = s.active_torque;
  std::size_t i = 0;
  for (; i < s.pending.size() && s.pending[i].release_time < t1; ++i) {
    const double r = std::max(s.pending[i].release_time, t0);
    integral += (r - seg_start) * current;
    seg_start = r;
    current = s.pending[i].torque;
  }
  integral += (t1 - seg_start) * current;
  s.active_torque = current;
  s.pending.erase(s.pending.begin(), s.pending.begin() + i);
  return integral / dt;
}

}  // namespace

StepInfo step(SimState& state, const RobotModel& m, const Terrain& terrain,
              const ContactParams& cp, double dt) {
  StepInfo info;

  Vector6d tau = state.efficiency * consume_pipeline(state, dt);
  for (int j = 0; j < kNumJoints; ++j) {
    const double lim = m.joint[j].torque_limit;
    tau(j) = std::clamp(tau(j), -lim, lim);
  }
  info.applied_torque = tau;

  const Kinematics kin = forward_kinematics(m, state.q, state.v);
  info.contacts = contact_model(m, kin, terrain, cp);

  const Vector9d qdd = forward_dynamics(m, state.q, state.v, tau, info.contacts);

  state.v += dt * qdd;
  state.q += dt * state.v;
  state.t += dt;

  state.contact = {false, false, false, false};
  for (const auto& w : info.contacts) state.contact[w.point] = true;

  if (!state.q.allFinite() || !state.v.allFinite() ||
      state.v.cwiseAbs().maxCoeff() > 1e6) {
    info.ok = false;
  }
  return info;
}

std::pair<Vec2, Vec2> com_state(const RobotModel& m, const SimState& s) {
  const Kinematics kin = forward_kinematics(m, s.q, s.v);
  return {com_position(m, kin), com_velocity(m, kin)};
}

Vec2 dcm(const RobotModel& m, const SimState& s, double b) {
  const auto [x, v] = com_state(m, s);
  return x + b * v;
}

bool leg_ik(const RobotModel& m, const Vec2& hip_to_ankle, double torso_angle,
            double foot_pitch, double* hip, double* knee, double* ankle) {
  const double l1 = m.thigh_length, l2 = m.shank_length;
  const double r = hip_to_ankle.norm();
  if (r > l1 + l2 - 1e-9 || r < std::abs(l1 - l2) + 1e-9) return false;

  // Segment angles are measured CCW from straight down: a segment at world
  // angle theta points along (sin theta, -cos theta).
  const double phi_d = std::atan2(hip_to_ankle.x(), -hip_to_ankle.y());
  const double cos_beta = (l1 * l1 + r * r - l2 * l2) / (2.0 * l1 * r);
  const double beta = std::acos(std::clamp(cos_beta, -1.0, 1.0));

  const double theta_thigh = phi_d + beta;  // knee in front, bending backward
  const Vec2 thigh_vec(l1 * std::sin(theta_thigh), -l1 * std::cos(theta_thigh));
  const Vec2 rem = hip_to_ankle - thigh_vec;
  const double theta_shank = std::atan2(rem.x(), -rem.y());

  *hip = theta_thigh - torso_angle;
  *knee = theta_shank - theta_thigh;
  *ankle = foot_pitch - theta_shank;
  return true;
}

SimState standing_state(const RobotModel& m, double left_x, double right_x,
                        double ground_height) {
  const double ankle_z = ground_height + m.sole_drop;
  const double sole_off_x = m.sole_center_offset().x();
  const double la_x = left_x - sole_off_x;
  const double ra_x = right_x - sole_off_x;
  const double target_x = 0.5 * (left_x + right_x);
  const double target_z = ground_height + m.com_height_nominal;

  SimState s;
  double hip_x = target_x;
  double hip_z = ankle_z + 0.92 * (m.thigh_length + m.shank_length);

  for (int iter = 0; iter < 200; ++iter) {
    double qh, qk, qa;
    s.q.setZero();
    s.q(0) = hip_x;
    s.q(1) = hip_z;
    if (!leg_ik(m, Vec2(la_x - hip_x, ankle_z - hip_z), 0.0, 0.0, &qh, &qk, &qa))
      throw std::runtime_error("standing_state: left leg target out of reach");
    s.q(3) = qh;
    s.q(4) = qk;
    s.q(5) = qa;
    if (!leg_ik(m, Vec2(ra_x - hip_x, ankle_z - hip_z), 0.0, 0.0, &qh, &qk, &qa))
      throw std::runtime_error("standing_state: right leg target out of reach");
    s.q(6) = qh;
    s.q(7) = qk;
    s.q(8) = qa;

    const Kinematics kin = forward_kinematics(m, s.q, Vector9d::Zero());
    const Vec2 com = com_position(m, kin);
    const Vec2 err(com.x() - target_x, com.y() - target_z);
    if (err.cwiseAbs().maxCoeff() < 1e-12) break;
    hip_x -= err.x();
    hip_z -= err.y();
  }
  return s;
}

}  // namespace dcmwalk::dyn
