#include "dcmwalk/policy/reward.hpp"

#include <cmath>
#include <stdexcept>

namespace dcmwalk::policy {

void RewardParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("reward parameter ") + name +
                                  " must be positive");
  };
  positive(w_xi, "w_xi");
  positive(w_foot, "w_foot");
  positive(w_torso, "w_torso");
  positive(w_tau, "w_tau");
  positive(w_smooth, "w_smooth");
  positive(lambda_xi, "lambda_xi");
  positive(lambda_foot, "lambda_foot");
  positive(lambda_torso, "lambda_torso");
  positive(lambda_tau, "lambda_tau");
  positive(lambda_smooth, "lambda_smooth");
  positive(termination_threshold, "termination_threshold");
  if (termination_penalty > 0.0)
    throw std::invalid_argument("termination penalty must not be positive");
}

RewardParams RewardParams::from_config(const Config& cfg) {
  RewardParams p;
  p.w_xi = cfg.get_double("reward.w_xi", p.w_xi);
  p.lambda_xi = cfg.get_double("reward.lambda_xi", p.lambda_xi);
  p.w_foot = cfg.get_double("reward.w_foot", p.w_foot);
  p.lambda_foot = cfg.get_double("reward.lambda_foot", p.lambda_foot);
  p.w_torso = cfg.get_double("reward.w_torso", p.w_torso);
  p.lambda_torso = cfg.get_double("reward.lambda_torso", p.lambda_torso);
  p.w_tau = cfg.get_double("reward.w_tau", p.w_tau);
  p.lambda_tau = cfg.get_double("reward.lambda_tau", p.lambda_tau);
  p.w_smooth = cfg.get_double("reward.w_smooth", p.w_smooth);
  p.lambda_smooth = cfg.get_double("reward.lambda_smooth", p.lambda_smooth);
  p.termination_penalty =
      cfg.get_double("reward.termination_penalty", p.termination_penalty);
  p.termination_threshold =
      cfg.get_double("reward.termination_threshold", p.termination_threshold);
  p.validate();
  return p;
}

RewardBreakdown compute_reward(const wbc::TrackingErrors& errors,
                               const Vector6d& tau, const Vector6d& tau_prev,
                               const Vector6d& tau_privileged,
                               const RewardParams& params, bool terminated) {
  RewardBreakdown r;
  r.xi = params.w_xi * std::exp(-params.lambda_xi * errors.e_xi.norm());
  r.foot =
      params.w_foot * std::exp(-params.lambda_foot * errors.e_foot.norm());
  r.torso = params.w_torso *
            std::exp(-params.lambda_torso * std::abs(errors.e_rot_torso));
  r.tau = params.w_tau *
          std::exp(-params.lambda_tau * (tau - tau_privileged).norm());
  r.smooth = params.w_smooth *
             std::exp(-params.lambda_smooth * (tau - tau_prev).norm());
  r.termination = terminated ? params.termination_penalty : 0.0;
  r.total = r.xi + r.foot + r.torso + r.tau + r.smooth + r.termination;
  return r;
}

bool check_termination(const Vec2& e_xi, double threshold) {
  if (!e_xi.allFinite()) return true;
  return e_xi.norm() > threshold;
}

}  // namespace dcmwalk::policy
