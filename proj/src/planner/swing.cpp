#include "dcmwalk/planner/swing.hpp"

#include <stdexcept>

namespace dcmwalk::planner {

FootTrajectory swing_trajectory(const Eigen::Vector3d& start,
                                const Eigen::Vector3d& target, double t_ss,
                                double apex_z) {
  if (t_ss <= 0.0)
    throw std::invalid_argument("swing_trajectory: duration must be positive");

  // Seven conditions per channel: p, p', p'' at both ends plus a midpoint
  // value. The same 7x7 system serves all channels, only the rhs differs.
  const double T = t_ss;
  Eigen::Matrix<double, 7, 7> M = Eigen::Matrix<double, 7, 7>::Zero();
  auto row_pos = [&](int r, double t) {
    double p = 1.0;
    for (int j = 0; j < 7; ++j, p *= t) M(r, j) = p;
  };
  auto row_vel = [&](int r, double t) {
    double p = 1.0;
    for (int j = 1; j < 7; ++j, p *= t) M(r, j) = j * p;
  };
  auto row_acc = [&](int r, double t) {
    double p = 1.0;
    for (int j = 2; j < 7; ++j, p *= t) M(r, j) = j * (j - 1) * p;
  };
  row_pos(0, 0.0);
  row_vel(1, 0.0);
  row_acc(2, 0.0);
  row_pos(3, T);
  row_vel(4, T);
  row_acc(5, T);
  row_pos(6, 0.5 * T);

  const auto lu = M.fullPivLu();
  FootTrajectory out;
  out.start_ = start;
  out.target_ = target;
  out.duration_ = T;
  for (int ch = 0; ch < 3; ++ch) {
    Eigen::Matrix<double, 7, 1> rhs = Eigen::Matrix<double, 7, 1>::Zero();
    rhs(0) = start(ch);
    rhs(3) = target(ch);
    rhs(6) = ch == 1 ? apex_z : 0.5 * (start(ch) + target(ch));
    out.coeff_.col(ch) = lu.solve(rhs);
  }
  return out;
}

void FootTrajectory::eval(double t, Eigen::Vector3d* pos, Eigen::Vector3d* vel,
                          Eigen::Vector3d* acc) const {
  const double tc = std::min(std::max(t, 0.0), duration_);
  double tp[7];
  tp[0] = 1.0;
  for (int j = 1; j < 7; ++j) tp[j] = tp[j - 1] * tc;
  for (int ch = 0; ch < 3; ++ch) {
    double p = 0.0, v = 0.0, a = 0.0;
    for (int j = 0; j < 7; ++j) {
      const double c = coeff_(j, ch);
      p += c * tp[j];
      if (j >= 1) v += c * j * tp[j - 1];
      if (j >= 2) a += c * j * (j - 1) * tp[j - 2];
    }
    if (pos) (*pos)(ch) = p;
    if (vel) (*vel)(ch) = v;
    if (acc) (*acc)(ch) = a;
  }
}

}  // namespace dcmwalk::planner
