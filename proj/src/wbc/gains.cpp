#include "dcmwalk/wbc/gains.hpp"

#include <stdexcept>
#include <vector>

namespace dcmwalk::wbc {

void WbcGains::validate() const {
  if (k_xi(0, 0) <= 0.0 || k_xi(1, 1) <= 0.0)
    throw std::invalid_argument("WbcGains: k_xi diagonal must be positive");
  if (k_xi(0, 1) != 0.0 || k_xi(1, 0) != 0.0)
    throw std::invalid_argument("WbcGains: k_xi must be diagonal");
  const double weights[] = {w_com,     w_foot,      w_torso,
                            w_reg_tau, w_reg_force, w_reg_qdd};
  for (double w : weights)
    if (w < 0.0) throw std::invalid_argument("WbcGains: negative task weight");
  if (omega_foot <= 0.0 || omega_torso <= 0.0)
    throw std::invalid_argument("WbcGains: PD frequencies must be positive");
  if (mu <= 0.0) throw std::invalid_argument("WbcGains: mu must be positive");
  if (qp_tol <= 0.0 || qp_max_iter < 1)
    throw std::invalid_argument("WbcGains: bad QP settings");
}

WbcGains WbcGains::from_config(const Config& cfg) {
  WbcGains g;
  std::vector<double> kxi = cfg.get_double_list("wbc.k_xi");
  if (kxi.empty()) kxi = {g.k_xi(0, 0), g.k_xi(1, 1)};
  if (kxi.size() == 1) kxi.push_back(kxi[0]);
  if (kxi.size() != 2)
    throw std::invalid_argument("wbc.k_xi wants one or two values");
  g.k_xi = Eigen::Matrix2d::Zero();
  g.k_xi(0, 0) = kxi[0];
  g.k_xi(1, 1) = kxi[1];

  g.w_com = cfg.get_double("wbc.w_com", g.w_com);
  g.w_foot = cfg.get_double("wbc.w_foot", g.w_foot);
  g.w_torso = cfg.get_double("wbc.w_torso", g.w_torso);
  g.w_reg_tau = cfg.get_double("wbc.w_reg_tau", g.w_reg_tau);
  g.w_reg_force = cfg.get_double("wbc.w_reg_force", g.w_reg_force);
  g.w_reg_qdd = cfg.get_double("wbc.w_reg_qdd", g.w_reg_qdd);
  g.omega_foot = cfg.get_double("wbc.omega_foot", g.omega_foot);
  g.omega_torso = cfg.get_double("wbc.omega_torso", g.omega_torso);
  g.mu = cfg.get_double("wbc.mu", g.mu);
  g.stance_damping = cfg.get_double("wbc.stance_damping", g.stance_damping);
  g.touchdown_damping =
      cfg.get_double("wbc.touchdown_damping", g.touchdown_damping);
  g.touchdown_height =
      cfg.get_double("wbc.touchdown_height", g.touchdown_height);
  g.flight_height = cfg.get_double("wbc.flight_height", g.flight_height);
  g.qp_tol = cfg.get_double("wbc.qp_tol", g.qp_tol);
  g.qp_max_iter = cfg.get_int("wbc.qp_max_iter", g.qp_max_iter);
  g.validate();
  return g;
}

}  // namespace dcmwalk::wbc
