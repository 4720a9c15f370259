#include "dcmwalk/dr/randomization.hpp"

#include <cmath>
#include <stdexcept>

namespace dcmwalk::dr {

void RandomizationConfig::validate() const {
  if (beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("RandomizationConfig: beta outside [0, 1]");
  const double sigmas[] = {sigma_torso_pos, sigma_torso_rot, sigma_lin_vel,
                           sigma_ang_vel,   sigma_joint_pos, sigma_joint_vel};
  for (double s : sigmas)
    if (s < 0.0)
      throw std::invalid_argument("RandomizationConfig: negative sigma");
  if (mass_lo < 0.0 || mass_lo >= 1.0 || mass_hi < 0.0)
    throw std::invalid_argument("RandomizationConfig: bad mass scale range");
  if (joint_friction_lo < 0.0 || joint_friction_lo > 1.0 ||
      joint_friction_hi < 0.0)
    throw std::invalid_argument(
        "RandomizationConfig: bad joint friction range");
  if (joint_damping_lo < 0.0 || joint_damping_lo > 1.0 || joint_damping_hi < 0.0)
    throw std::invalid_argument("RandomizationConfig: bad joint damping range");
  if (efficiency_lo < 0.0 || efficiency_lo >= 1.0)
    throw std::invalid_argument("RandomizationConfig: bad efficiency range");
  if (delay_ms_lo < 0.0 || delay_ms_hi < delay_ms_lo)
    throw std::invalid_argument("RandomizationConfig: bad delay range");
  if (floor_mu_lo <= 0.0 || floor_mu_hi < floor_mu_lo)
    throw std::invalid_argument("RandomizationConfig: bad floor friction");
  if (unevenness < 0.0 || terrain_spacing <= 0.0 ||
      terrain_extent <= terrain_spacing || spawn_pad < 0.0)
    throw std::invalid_argument("RandomizationConfig: bad terrain settings");
}

RandomizationConfig RandomizationConfig::from_config(const Config& cfg) {
  RandomizationConfig c;
  c.beta = cfg.get_double("randomization.beta", c.beta);
  c.seed = static_cast<std::uint64_t>(
      cfg.get_int("randomization.seed", static_cast<int>(c.seed)));
  c.sensor_noise = cfg.get_bool("randomization.sensor_noise", c.sensor_noise);
  c.dynamics = cfg.get_bool("randomization.dynamics", c.dynamics);
  c.actuation = cfg.get_bool("randomization.actuation", c.actuation);
  c.environment = cfg.get_bool("randomization.environment", c.environment);

  c.sigma_torso_pos =
      cfg.get_double("randomization.sigma_torso_pos", c.sigma_torso_pos);
  c.sigma_torso_rot =
      cfg.get_double("randomization.sigma_torso_rot", c.sigma_torso_rot);
  c.sigma_lin_vel =
      cfg.get_double("randomization.sigma_lin_vel", c.sigma_lin_vel);
  c.sigma_ang_vel =
      cfg.get_double("randomization.sigma_ang_vel", c.sigma_ang_vel);
  c.sigma_joint_pos =
      cfg.get_double("randomization.sigma_joint_pos", c.sigma_joint_pos);
  c.sigma_joint_vel =
      cfg.get_double("randomization.sigma_joint_vel", c.sigma_joint_vel);

  c.mass_lo = cfg.get_double("randomization.mass_lo", c.mass_lo);
  c.mass_hi = cfg.get_double("randomization.mass_hi", c.mass_hi);
  c.joint_friction_lo =
      cfg.get_double("randomization.joint_friction_lo", c.joint_friction_lo);
  c.joint_friction_hi =
      cfg.get_double("randomization.joint_friction_hi", c.joint_friction_hi);
  c.joint_damping_lo =
      cfg.get_double("randomization.joint_damping_lo", c.joint_damping_lo);
  c.joint_damping_hi =
      cfg.get_double("randomization.joint_damping_hi", c.joint_damping_hi);
  c.efficiency_lo =
      cfg.get_double("randomization.efficiency_lo", c.efficiency_lo);
  c.delay_ms_lo = cfg.get_double("randomization.delay_ms_lo", c.delay_ms_lo);
  c.delay_ms_hi = cfg.get_double("randomization.delay_ms_hi", c.delay_ms_hi);
  c.floor_mu_lo = cfg.get_double("randomization.floor_mu_lo", c.floor_mu_lo);
  c.floor_mu_hi = cfg.get_double("randomization.floor_mu_hi", c.floor_mu_hi);
  c.nominal_floor_mu =
      cfg.get_double("randomization.nominal_floor_mu", c.nominal_floor_mu);
  c.unevenness = cfg.get_double("randomization.unevenness", c.unevenness);
  c.terrain_spacing =
      cfg.get_double("randomization.terrain_spacing", c.terrain_spacing);
  c.terrain_extent =
      cfg.get_double("randomization.terrain_extent", c.terrain_extent);
  c.spawn_pad = cfg.get_double("randomization.spawn_pad", c.spawn_pad);
  c.validate();
  return c;
}

ModelDraw randomize_model(const dyn::RobotModel& model,
                          const RandomizationConfig& cfg, Rng& rng) {
  ModelDraw draw;
  draw.model = model;
  draw.mass_scale.fill(1.0);
  draw.friction_scale.fill(1.0);
  draw.damping_scale.fill(1.0);
  if (!cfg.dynamics) return draw;

  const double b = cfg.beta;
  for (int i = 0; i < dyn::kNumLinks; ++i) {
    const double s = rng.uniform(1.0 - cfg.mass_lo * b, 1.0 + cfg.mass_hi * b);
    draw.mass_scale[i] = s;
    draw.model.link[i].mass *= s;
    draw.model.link[i].inertia *= s;
  }
  for (int j = 0; j < dyn::kNumJoints; ++j) {
    const double s = rng.uniform(1.0 - cfg.joint_friction_lo * b,
                                 1.0 + cfg.joint_friction_hi * b);
    draw.friction_scale[j] = s;
    draw.model.joint[j].dry_friction *= s;
  }
  for (int j = 0; j < dyn::kNumJoints; ++j) {
    const double s = rng.uniform(1.0 - cfg.joint_damping_lo * b,
                                 1.0 + cfg.joint_damping_hi * b);
    draw.damping_scale[j] = s;
    draw.model.joint[j].damping *= s;
  }
  return draw;
}

dyn::SimState perturb_state(const dyn::SimState& state,
                            const RandomizationConfig& cfg, Rng& rng) {
  dyn::SimState s = state;
  if (!cfg.sensor_noise) return s;
  const double b = cfg.beta;
  s.q(0) += rng.normal(0.0, cfg.sigma_torso_pos * b);
  s.q(1) += rng.normal(0.0, cfg.sigma_torso_pos * b);
  s.q(2) += rng.normal(0.0, cfg.sigma_torso_rot * b);
  s.v(0) += rng.normal(0.0, cfg.sigma_lin_vel * b);
  s.v(1) += rng.normal(0.0, cfg.sigma_lin_vel * b);
  s.v(2) += rng.normal(0.0, cfg.sigma_ang_vel * b);
  for (int j = 0; j < 6; ++j) s.q(3 + j) += rng.normal(0.0, cfg.sigma_joint_pos * b);
  for (int j = 0; j < 6; ++j) s.v(3 + j) += rng.normal(0.0, cfg.sigma_joint_vel * b);
  return s;
}

ActuationDraw sample_actuation(const RandomizationConfig& cfg, Rng& rng) {
  ActuationDraw d;
  if (!cfg.actuation) return d;
  d.delay_ms = rng.uniform(cfg.delay_ms_lo, cfg.delay_ms_hi);
  d.alpha_decay = rng.uniform(1.0 - cfg.efficiency_lo * cfg.beta, 1.0);
  return d;
}

void apply_actuation(dyn::SimState& state, const Vector6d& tau,
                     const ActuationDraw& draw) {
  state.efficiency = draw.alpha_decay;
  dyn::command_torque(state, tau, draw.delay_ms * 1e-3);
}

dyn::Terrain randomize_terrain(const RandomizationConfig& cfg, Rng& rng) {
  dyn::Terrain t;
  if (!cfg.environment) {
    t = dyn::Terrain::flat(cfg.nominal_floor_mu);
    return t;
  }
  t.friction = rng.uniform(cfg.floor_mu_lo, cfg.floor_mu_hi);

  const int half = static_cast<int>(cfg.terrain_extent / cfg.terrain_spacing);
  const double amp = cfg.unevenness * cfg.beta;
  t.knot_x.reserve(2 * half + 1);
  t.knot_h.reserve(2 * half + 1);
  for (int i = -half; i <= half; ++i) {
    const double x = i * cfg.terrain_spacing;
    t.knot_x.push_back(x);
    t.knot_h.push_back(std::abs(x) <= cfg.spawn_pad
                           ? 0.0
                           : rng.uniform(-amp, amp));
  }
  t.validate();
  return t;
}

}  // namespace dcmwalk::dr
