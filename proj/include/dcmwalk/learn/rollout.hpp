#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcmwalk/core/types.hpp"
#include "dcmwalk/dr/randomization.hpp"
#include "dcmwalk/dyn/simulator.hpp"
#include "dcmwalk/learn/variant.hpp"
#include "dcmwalk/nn/policy_net.hpp"
#include "dcmwalk/planner/gait.hpp"
#include "dcmwalk/policy/observation.hpp"
#include "dcmwalk/policy/reward.hpp"
#include "dcmwalk/wbc/controller.hpp"

namespace dcmwalk::learn {

// Everything an episode needs besides the networks: models, controller
// gains, randomization level, reward shaping and loop timing. One context is
// shared across a whole training run.
struct RolloutContext {
  dyn::RobotModel nominal = dyn::RobotModel::defaults();
  planner::GaitParams gait;
  wbc::WbcGains gains;
  dyn::ContactParams contact;
  dr::RandomizationConfig dr;
  policy::RewardParams reward;
  policy::ObsScales scales;

  double control_dt = 0.005;  // policy/controller period (200 Hz)
  int sim_substeps = 5;       // plant integration steps per control tick
  double episode_seconds = 10.0;
  double command_interval = 2.0;  // forward-speed command resample period
  double command_lo = -0.3, command_hi = 0.3;
  double filter_cutoff_hz = 20.0;
  bool filter_enabled = true;
  // When false (default), a step is supervised toward the oracle torque the
  // buffer pairs with it, computed one tick later on the post-action state;
  // when true, toward the oracle torque of the same tick.
  bool same_step_supervision = false;

  // Residual bound as a fraction of the torque limits; direct-torque
  // variants use the full limits instead.
  double residual_scale = 0.5;

  // Throws std::invalid_argument on non-positive timing or a residual scale
  // outside (0, 1].
  void validate() const;

  static RolloutContext from_config(const Config& cfg);
};

// One control tick of experience. Torques are stored in command space; the
// pre-squash action and its log probability refer to the Gaussian the actor
// sampled from before the tanh bound was applied.
struct Transition {
  Eigen::VectorXd obs;       // actor observation o_t
  Eigen::VectorXd priv_obs;  // critic observation
  Eigen::VectorXd next_obs;  // actor observation after the step
  Vector6d tau_base = Vector6d::Zero();     // base controller command
  Vector6d tau_star = Vector6d::Zero();     // oracle command (decay-corrected)
  Vector6d tau_applied = Vector6d::Zero();  // command sent to the plant
  Vector6d action_pre = Vector6d::Zero();   // sampled pre-squash action
  Vector6d residual = Vector6d::Zero();     // bounded network torque
  Vector6d sup_target = Vector6d::Zero();   // supervision torque target
  double log_prob = 0.0;  // actor log-density of action_pre at sampling time
  double reward = 0.0;
  policy::RewardBreakdown breakdown;
  double value = 0.0;  // critic value at o_t
  bool terminal = false;
  // Actor recurrent state before this step, one entry per GRU layer; lets an
  // update rebuild the forward pass from any chunk boundary.
  std::vector<Eigen::VectorXd> hidden_pre;

  // Filled by the update from GAE.
  double advantage = 0.0;
  double ret = 0.0;
};

// Per-episode scalars for curves and evaluation tables. DCM and foot errors
// are the privileged (true-state) tracking errors.
struct EpisodeMetrics {
  int steps = 0;
  double sim_seconds = 0.0;
  double total_reward = 0.0;
  double mean_reward = 0.0;
  bool terminated = false;  // tracking failure (fall)
  bool diverged = false;    // simulator blow-up
  double mean_dcm_error = 0.0;
  double max_dcm_error = 0.0;
  double mean_foot_error = 0.0;
  double mean_abs_residual = 0.0;
  double forward_distance = 0.0;  // CoM x displacement
  int qp_fallbacks = 0;

  bool success() const { return !terminated && !diverged; }
};

// Every random draw an episode consumed, enough to replay it exactly:
// episode seed, the model/terrain draws, the per-tick actuation draws and
// the command schedule.
struct EpisodeDrawLog {
  std::uint64_t seed = 0;
  double beta = 1.0;
  std::vector<double> mass_scale;
  std::vector<double> friction_scale;
  std::vector<double> damping_scale;
  double floor_friction = 0.0;
  std::vector<double> terrain_knot_h;
  std::vector<dr::ActuationDraw> actuation;
  std::vector<double> commands;

  std::string to_json_line() const;
  static EpisodeDrawLog from_json_line(const std::string& line);
};

struct EpisodeResult {
  std::vector<Transition> transitions;
  double bootstrap_value = 0.0;  // critic value at the cutoff state, 0 if terminal
  EpisodeMetrics metrics;
  EpisodeDrawLog draws;
};

struct RolloutOptions {
  bool deterministic = false;  // act with the mean instead of sampling
  bool zero_residual = false;  // force the network torque to zero
};

// Per-joint squash bound for a variant: residual_scale * torque limits for
// residual variants, the full limits for direct-torque variants.
Vector6d action_bound(Variant v, const RolloutContext& ctx);

// Runs one episode of Algorithm-style data collection: randomize model,
// terrain and initial state from the episode seed, then per 200 Hz tick
// observe the noisy state, query base and oracle controllers, sample the
// actor residual, command base + residual (or the direct command) through
// the delayed, decay-scaled actuation pipeline, and integrate the plant.
// Rewards score the post-action privileged tracking errors; the episode ends
// at the time horizon, on tracking failure (termination penalty) or on
// simulator divergence (treated as termination). The actor hidden state
// before every step is recorded for truncated-BPTT updates. Deterministic:
// the same context, networks, seed and options reproduce the episode
// bit for bit.
EpisodeResult collect_episode(Variant v, const RolloutContext& ctx,
                              const nn::PolicyNet& net,
                              const nn::CriticNet& critic, std::uint64_t seed,
                              const RolloutOptions& opts = {});

}  // namespace dcmwalk::learn
