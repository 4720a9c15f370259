#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcmwalk/learn/rollout.hpp"
#include "dcmwalk/learn/train_config.hpp"
#include "dcmwalk/learn/update.hpp"
#include "dcmwalk/nn/adam.hpp"
#include "dcmwalk/nn/checkpoint.hpp"
#include "dcmwalk/nn/policy_net.hpp"

namespace dcmwalk::learn {

struct EvalStats {
  double success_rate = 0.0;
  double mean_dcm_error = 0.0;      // over successful episodes
  double mean_dcm_error_all = 0.0;  // over every episode
  double mean_reward = 0.0;
  double mean_distance = 0.0;
  int episodes = 0;
};

struct EvalSnapshot {
  int episode = 0;
  EvalStats stats;
};

struct TrainResult {
  int episodes_run = 0;
  int updates_run = 0;
  bool stopped_early = false;
  EvalStats final_eval;
  EvalStats best_eval;
  std::vector<EvalSnapshot> curve;
};

// Owns the networks, optimizers and run-directory outputs of one training
// run: alternating episode collection and PPO + supervision updates, with
// periodic deterministic evaluation snapshots, early stop on sustained
// success, and resumable binary checkpoints. Everything is derived from
// (configs, seed): episode seeds, evaluation seeds and minibatch shuffles
// come from fixed seed streams, so two runs with the same inputs produce
// identical curves and files.
class Trainer {
 public:
  // run_dir may be empty to keep the run entirely in memory (tests). When
  // resume is false any previous log/curve files in run_dir are replaced.
  Trainer(Variant v, const RolloutContext& ctx, const TrainConfig& cfg,
          const nn::PolicyNetConfig& actor_cfg,
          const nn::CriticNetConfig& critic_cfg, std::string run_dir = "",
          std::string config_snapshot = "", bool resume = false);

  // Full training loop honoring the episode budget and early stop.
  TrainResult run();

  // One collection + update cycle (episodes_per_update episodes); exposed
  // for tests and incremental drivers.
  UpdateDiagnostics step_once();

  EvalStats evaluate(int episodes, double seconds, std::uint64_t seed_base);
  EvalStats evaluate();  // config cadence: fixed evaluation seed set

  void save_checkpoint_file(const std::string& path);
  void load_checkpoint_file(const std::string& path);

  nn::PolicyNet& actor() { return net_; }
  nn::CriticNet& critic_net() { return critic_; }
  const TrainConfig& config() const { return cfg_; }
  const RolloutContext& context() const { return ctx_; }
  Variant variant() const { return variant_; }
  int episode() const { return episode_; }
  int updates() const { return updates_; }
  Vector6d bound() const { return action_bound(variant_, ctx_); }
  std::uint64_t checkpoint_hash() const;

  std::uint64_t episode_seed(int index) const;
  std::uint64_t eval_seed(int index) const;

 private:
  void write_meta();
  void log_update(const UpdateDiagnostics& diag,
                  const std::vector<EpisodeResult>& buffer);
  void log_eval(const EvalSnapshot& snap);
  std::string path(const std::string& name) const;

  Variant variant_;
  RolloutContext ctx_;
  TrainConfig cfg_;
  nn::PolicyNet net_;
  nn::CriticNet critic_;
  nn::Adam actor_opt_;
  nn::Adam critic_opt_;
  std::string run_dir_;
  std::string config_snapshot_;

  int episode_ = 0;
  int updates_ = 0;
  int stop_streak_ = 0;
  double best_success_ = -1.0;
  double best_dcm_ = 0.0;
};

}  // namespace dcmwalk::learn
