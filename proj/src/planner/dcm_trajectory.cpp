#include "dcmwalk/planner/dcm_trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace dcmwalk::planner {

namespace {

// Exact solution of b*xi_dot = xi - v(t) with v linear in t, anchored at the
// phase end: xi(t) = alpha(t) v0 + beta(t) vT + gamma(t) xi_end.
struct PhaseCoeffs {
  double alpha, beta, gamma;
};

PhaseCoeffs phase_coeffs(double t, double T, double b) {
  PhaseCoeffs c;
  c.gamma = std::exp((t - T) / b);
  const double r = b / T;
  c.beta = t / T + r - (1.0 + r) * c.gamma;
  c.alpha = 1.0 - t / T - r + r * c.gamma;
  return c;
}

}  // namespace

DcmTrajectory::DcmTrajectory(std::vector<DcmPhase> phases, double b)
    : phases_(std::move(phases)), b_(b) {
  if (b_ <= 0.0) throw std::invalid_argument("dcm trajectory: b must be positive");
  double t = 0.0;
  for (auto& ph : phases_) {
    ph.t_start = t;
    t += ph.duration;
  }
  horizon_ = t;
}

DcmTrajectory::Sample DcmTrajectory::eval(double t) const {
  Sample s;
  if (phases_.empty()) return s;
  if (t >= horizon_) {
    const DcmPhase& last = phases_.back();
    s.xi = last.xi_end;
    s.vrp = last.vT;
    s.xi_dot = (s.xi - s.vrp) / b_;
    s.phase = static_cast<int>(phases_.size()) - 1;
    return s;
  }
  int idx = 0;
  while (idx + 1 < static_cast<int>(phases_.size()) &&
         t >= phases_[idx].t_start + phases_[idx].duration)
    ++idx;
  const DcmPhase& ph = phases_[idx];
  const double local = std::max(0.0, t - ph.t_start);
  const PhaseCoeffs c = phase_coeffs(local, ph.duration, b_);
  s.xi = c.alpha * ph.v0 + c.beta * ph.vT + c.gamma * ph.xi_end;
  s.vrp = ph.v0 + (local / ph.duration) * (ph.vT - ph.v0);
  s.xi_dot = (s.xi - s.vrp) / b_;
  s.phase = idx;
  return s;
}

DcmTrajectory dcm_backward_pass(const VrpPlan& plan, const GaitParams& gait) {
  plan.validate();
  const int n = plan.n_phases();
  std::vector<DcmPhase> phases(n);
  Vec2 xi_end = plan.waypoints.back();  // rest: the DCM settles on v_n
  for (int i = n - 1; i >= 0; --i) {
    DcmPhase& ph = phases[i];
    ph.v0 = plan.waypoints[i];
    ph.vT = plan.waypoints[i + 1];
    ph.duration = plan.durations[i];
    ph.type = plan.types[i];
    ph.stance = plan.stance[i];
    ph.xi_end = xi_end;
    const PhaseCoeffs c = phase_coeffs(0.0, ph.duration, gait.b);
    xi_end = c.alpha * ph.v0 + c.beta * ph.vT + c.gamma * ph.xi_end;
  }
  return DcmTrajectory(std::move(phases), gait.b);
}

}  // namespace dcmwalk::planner
