#pragma once

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/core/types.hpp"
#include "dcmwalk/wbc/gains.hpp"

namespace dcmwalk::policy {

// Exponential tracking rewards w*exp(-lambda*d) plus a smoothness term and a
// termination penalty.
struct RewardParams {
  double w_xi = 20.0;
  double lambda_xi = 10.0;
  double w_foot = 5.0;
  double lambda_foot = 10.0;
  double w_torso = 1.0;
  double lambda_torso = 10.0;
  double w_tau = 5.0;
  double lambda_tau = 0.01;
  double w_smooth = 0.01;
  double lambda_smooth = 0.01;
  double termination_penalty = -20.0;
  double termination_threshold = 0.2;  // DCM error norm [m]

  void validate() const;
  static RewardParams from_config(const Config& cfg);
};

struct RewardBreakdown {
  double xi = 0.0;
  double foot = 0.0;
  double torso = 0.0;
  double tau = 0.0;
  double smooth = 0.0;
  double termination = 0.0;
  double total = 0.0;
};

// errors carry the ground-truth tracking errors of the applied controller;
// tau is the torque actually commanded this tick (base + residual), tau_prev
// the previous tick's, tau_privileged the supervising controller's output.
RewardBreakdown compute_reward(const wbc::TrackingErrors& errors,
                               const Vector6d& tau, const Vector6d& tau_prev,
                               const Vector6d& tau_privileged,
                               const RewardParams& params, bool terminated);

// True when the DCM error norm exceeds the threshold or is not finite.
bool check_termination(const Vec2& e_xi, double threshold = 0.2);

}  // namespace dcmwalk::policy
