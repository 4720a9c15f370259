#include "dcmwalk/policy/observation.hpp"

#include <stdexcept>

namespace dcmwalk::policy {

void ObsScales::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("observation scale ") + name +
                                  " must be positive");
  };
  positive(joint_pos, "joint_pos");
  positive(joint_vel, "joint_vel");
  positive(torque, "torque");
  positive(dcm_error, "dcm_error");
  positive(foot_error, "foot_error");
  positive(base_vel, "base_vel");
}

ObsScales ObsScales::from_config(const Config& cfg) {
  ObsScales s;
  s.joint_pos = cfg.get_double("policy.obs_scale_joint_pos", s.joint_pos);
  s.joint_vel = cfg.get_double("policy.obs_scale_joint_vel", s.joint_vel);
  s.torque = cfg.get_double("policy.obs_scale_torque", s.torque);
  s.dcm_error = cfg.get_double("policy.obs_scale_dcm_error", s.dcm_error);
  s.foot_error = cfg.get_double("policy.obs_scale_foot_error", s.foot_error);
  s.base_vel = cfg.get_double("policy.obs_scale_base_vel", s.base_vel);
  s.validate();
  return s;
}

Eigen::VectorXd build_observation(const Vector9d& q_noisy,
                                  const Vector9d& v_noisy,
                                  const Vector6d& tau_base,
                                  const Vector6d& tau_prev, const Vec2& e_xi,
                                  const Eigen::Vector3d& e_foot,
                                  const ObsScales& scales) {
  Eigen::VectorXd o(kObservationDim);
  o.segment<6>(0) = scales.joint_pos * q_noisy.tail<6>();
  o.segment<6>(6) = scales.joint_vel * v_noisy.tail<6>();
  o.segment<6>(12) = scales.torque * tau_base;
  o.segment<6>(18) = scales.torque * tau_prev;
  o.segment<2>(24) = scales.dcm_error * e_xi;
  o.segment<3>(26) = scales.foot_error * e_foot;
  if (!o.allFinite())
    throw std::runtime_error("observation contains non-finite entries");
  return o;
}

Eigen::VectorXd build_privileged(const Eigen::VectorXd& observation,
                                 const Vector9d& q_true,
                                 const Vector9d& v_true,
                                 const Vector6d& tau_privileged,
                                 const Vec2& e_xi,
                                 const Eigen::Vector3d& e_foot,
                                 const ObsScales& scales) {
  if (observation.size() != kObservationDim)
    throw std::invalid_argument("actor observation has wrong dimension");
  Eigen::VectorXd o(kPrivilegedDim);
  o.head(kObservationDim) = observation;
  int k = kObservationDim;
  o.segment<2>(k) = scales.base_vel * v_true.head<2>();  // linear base velocity
  k += 2;
  o(k++) = scales.base_vel * v_true(2);  // angular base velocity
  o.segment<6>(k) = scales.joint_pos * q_true.tail<6>();
  k += 6;
  o.segment<6>(k) = scales.joint_vel * v_true.tail<6>();
  k += 6;
  o.segment<6>(k) = scales.torque * tau_privileged;
  k += 6;
  o.segment<2>(k) = scales.dcm_error * e_xi;
  k += 2;
  o.segment<3>(k) = scales.foot_error * e_foot;
  if (!o.allFinite())
    throw std::runtime_error("privileged observation contains non-finite entries");
  return o;
}

}  // namespace dcmwalk::policy
