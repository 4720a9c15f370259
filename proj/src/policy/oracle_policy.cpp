#include "dcmwalk/policy/oracle_policy.hpp"

#include <stdexcept>

namespace dcmwalk::policy {

namespace {
wbc::WbcGains with_true_friction(wbc::WbcGains gains, double floor_mu) {
  gains.mu = floor_mu;
  return gains;
}
}  // namespace

OraclePolicy::OraclePolicy(const dyn::RobotModel& true_model,
                           const wbc::WbcGains& gains,
                           const dyn::Terrain& true_terrain,
                           const planner::GaitParams& gait)
    : ctrl_(true_model, with_true_friction(gains, true_terrain.friction),
            true_terrain, gait) {}

wbc::WbcOutput OraclePolicy::tick(double t, const Vector9d& q,
                                  const Vector9d& v,
                                  const dr::ActuationDraw& draw) {
  if (!(draw.alpha_decay > 0.0))
    throw std::invalid_argument("efficiency draw must be positive");
  wbc::WbcOutput out = ctrl_.tick(t, q, v);
  out.tau /= draw.alpha_decay;
  return out;
}

}  // namespace dcmwalk::policy
