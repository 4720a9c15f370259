#include "dcmwalk/policy/base_policy.hpp"

namespace dcmwalk::policy {

BasePolicy::BasePolicy(const dyn::RobotModel& nominal_model,
                       const wbc::WbcGains& gains,
                       const dyn::Terrain& believed_terrain,
                       const planner::GaitParams& gait,
                       double filter_cutoff_hz, bool filter_enabled)
    : filter_(filter_cutoff_hz),
      ctrl_(nominal_model, gains, believed_terrain, gait),
      filter_enabled_(filter_enabled) {}

void BasePolicy::reset(double t, const Vector9d& q_measured,
                       const Vector9d& v_measured,
                       dyn::FootSide first_stance) {
  filter_.reset();
  filter_.step(q_measured, v_measured, 0.0);
  prev_t_ = t;
  have_prev_t_ = true;
  ctrl_.reset(t, filter_.q(), filter_.v(), first_stance);
}

void BasePolicy::reset_standing(double t, const Vector9d& q_measured,
                                const Vector9d& v_measured) {
  filter_.reset();
  filter_.step(q_measured, v_measured, 0.0);
  prev_t_ = t;
  have_prev_t_ = true;
  ctrl_.reset_standing(t, filter_.q(), filter_.v());
}

wbc::WbcOutput BasePolicy::tick(double t, const Vector9d& q_measured,
                                const Vector9d& v_measured) {
  const double dt = have_prev_t_ ? t - prev_t_ : 0.0;
  prev_t_ = t;
  have_prev_t_ = true;
  filter_.step(q_measured, v_measured, dt);
  if (filter_enabled_) return ctrl_.tick(t, filter_.q(), filter_.v());
  return ctrl_.tick(t, q_measured, v_measured);
}

}  // namespace dcmwalk::policy
