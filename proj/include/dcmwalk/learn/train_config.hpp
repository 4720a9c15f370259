#pragma once

#include <cstdint>

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/learn/variant.hpp"

namespace dcmwalk::learn {

// PPO + supervision hyperparameters. Objective weights follow
//   L = w_rl * L_rl + w_sup * L_sup
// with the RL term carrying the entropy bonus and the critic trained
// separately on GAE returns. Setting w_sup = 0 recovers the pure residual
// RL baseline, w_rl = 0 the pure imitation baseline; both zero disables
// every update (no-op mode, useful for harness plumbing tests).
struct TrainConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_eps = 0.2;
  double lr_actor = 3e-4;
  double lr_critic = 3e-4;
  int epochs = 4;
  int minibatch_timesteps = 256;
  int chunk_len = 32;  // truncated BPTT window
  double w_rl = 1.0;
  double w_sup = 10.0;
  double entropy_coef = 1e-3;
  double grad_clip = 1.0;
  bool normalize_advantages = true;

  int episodes = 1500;           // training episode budget
  int episodes_per_update = 1;   // episodes collected per PPO update
  int eval_interval = 25;        // episodes between evaluation snapshots
  int eval_episodes = 10;        // evaluation seeds per snapshot
  double eval_seconds = 5.0;
  double stop_success = 0.95;    // early-stop threshold on eval success rate
  int stop_patience = 2;         // consecutive snapshots at/above threshold
  bool early_stop = true;

  std::uint64_t seed = 0;

  // Effective objective weights for a variant: the RL weight is zeroed for
  // the imitation baseline and the supervision weight for the residual RL
  // baseline; BOR and OR use the configured values.
  double effective_w_rl(Variant v) const {
    return v == Variant::kIL ? 0.0 : w_rl;
  }
  double effective_w_sup(Variant v) const {
    return v == Variant::kResRL ? 0.0 : w_sup;
  }

  // Throws std::invalid_argument on gamma outside (0, 1), non-positive
  // epochs/batch/chunk sizes, negative weights or a clip range outside
  // (0, 1).
  void validate() const;

  static TrainConfig from_config(const Config& cfg);
};

}  // namespace dcmwalk::learn
