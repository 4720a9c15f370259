#pragma once

#include <array>
#include <cstdint>

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/core/rng.hpp"
#include "dcmwalk/dyn/simulator.hpp"
#include "dcmwalk/dyn/terrain.hpp"

namespace dcmwalk::dr {

// Domain randomization settings. The level knob beta in [0, 1] scales the
// sensor noise deviations and the dynamics scaling ranges; motor delay and
// floor friction stay at their full ranges regardless of beta. Distribution
// parameters mirror the randomization table row by row; block enable flags
// turn whole groups off for controlled experiments.
struct RandomizationConfig {
  double beta = 1.0;
  std::uint64_t seed = 0;

  bool sensor_noise = true;
  bool dynamics = true;
  bool actuation = true;   // motor delay + efficiency
  bool environment = true; // floor friction + unevenness

  // Additive Gaussian sensor noise, sigma at beta = 1.
  double sigma_torso_pos = 0.05;  // [m]
  double sigma_torso_rot = 0.05;  // [rad]
  double sigma_lin_vel = 0.1;     // [m/s]
  double sigma_ang_vel = 0.1;     // [rad/s]
  double sigma_joint_pos = 0.05;  // [rad]
  double sigma_joint_vel = 0.1;   // [rad/s]

  // Multiplicative dynamics scales, drawn U(1 - lo*beta, 1 + hi*beta).
  double mass_lo = 0.2, mass_hi = 0.5;
  double joint_friction_lo = 0.5, joint_friction_hi = 0.1;
  double joint_damping_lo = 0.5, joint_damping_hi = 0.2;
  // Motor efficiency U(1 - lo*beta, 1).
  double efficiency_lo = 0.2;

  // Independent of beta.
  double delay_ms_lo = 2.0, delay_ms_hi = 4.0;
  double floor_mu_lo = 0.5, floor_mu_hi = 1.1;
  double nominal_floor_mu = 0.8;  // used when the environment block is off

  // Piecewise-linear ground unevenness: knot height amplitude at beta = 1,
  // knot spacing, profile extent, and a flat pad around the spawn point so
  // the initial double stance is consistent.
  double unevenness = 0.01;      // [m]
  double terrain_spacing = 0.3;  // [m]
  double terrain_extent = 12.0;  // [m]
  double spawn_pad = 0.5;        // [m]

  // Throws std::invalid_argument on out-of-range beta, negative deviations
  // or disordered uniform bounds.
  void validate() const;

  static RandomizationConfig from_config(const Config& cfg);
};

// Per-control-tick actuation draw.
struct ActuationDraw {
  double delay_ms = 0.0;
  double alpha_decay = 1.0;
};

// Randomized model plus the scales that produced it (kept for logging and
// episode replay).
struct ModelDraw {
  dyn::RobotModel model;
  std::array<double, dyn::kNumLinks> mass_scale{};
  std::array<double, dyn::kNumJoints> friction_scale{};
  std::array<double, dyn::kNumJoints> damping_scale{};
};

// Scales link masses (inertias proportionally), joint dry friction and joint
// damping, each with an independent uniform draw. The input model is not
// modified. Draw order: masses by link id, then friction by joint id, then
// damping by joint id.
ModelDraw randomize_model(const dyn::RobotModel& model,
                          const RandomizationConfig& cfg, Rng& rng);

// Additive Gaussian noise on the measured state channels (base pose, base
// velocities, joint positions/velocities); everything else is copied through.
// Draw order: base position (x, z), base rotation, linear velocity (x, z),
// angular velocity, joint positions, joint velocities.
dyn::SimState perturb_state(const dyn::SimState& state,
                            const RandomizationConfig& cfg, Rng& rng);

// Motor delay and efficiency for one control period. Draw order: delay,
// efficiency.
ActuationDraw sample_actuation(const RandomizationConfig& cfg, Rng& rng);

// Pushes the commanded torque into the actuation pipeline: the previously
// commanded torque keeps acting for delay_ms, then tau takes over; the
// efficiency multiplies whatever the plant applies during the period.
void apply_actuation(dyn::SimState& state, const Vector6d& tau,
                     const ActuationDraw& draw);

// Floor friction draw plus a piecewise-linear unevenness profile with
// amplitude unevenness * beta. Knots inside the spawn pad stay at zero
// height. Draw order: friction, then knot heights left to right.
dyn::Terrain randomize_terrain(const RandomizationConfig& cfg, Rng& rng);

}  // namespace dcmwalk::dr
