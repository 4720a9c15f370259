#pragma once

#include <Eigen/Dense>

namespace dcmwalk::planner {

// Degree-6 polynomial swing interpolation for the sole pose (x, z, pitch).
// Each channel meets position, velocity and acceleration boundary conditions
// (zero motion at both ends) plus one midpoint condition: the vertical
// channel passes through the apex height, the others through the boundary
// mean. Evaluation clamps t to [0, T].
class FootTrajectory {
 public:
  FootTrajectory() = default;

  void eval(double t, Eigen::Vector3d* pos, Eigen::Vector3d* vel,
            Eigen::Vector3d* acc) const;

  double duration() const { return duration_; }
  const Eigen::Vector3d& start() const { return start_; }
  const Eigen::Vector3d& target() const { return target_; }

  friend FootTrajectory swing_trajectory(const Eigen::Vector3d& start,
                                         const Eigen::Vector3d& target,
                                         double t_ss, double apex_z);

 private:
  Eigen::Matrix<double, 7, 3> coeff_ = Eigen::Matrix<double, 7, 3>::Zero();
  Eigen::Vector3d start_ = Eigen::Vector3d::Zero();
  Eigen::Vector3d target_ = Eigen::Vector3d::Zero();
  double duration_ = 0.0;
};

// apex_z is the absolute sole height at mid-swing. Throws
// std::invalid_argument when t_ss <= 0.
FootTrajectory swing_trajectory(const Eigen::Vector3d& start,
                                const Eigen::Vector3d& target, double t_ss,
                                double apex_z);

}  // namespace dcmwalk::planner
