#include "dcmwalk/learn/train_config.hpp"

#include <stdexcept>

namespace dcmwalk::learn {

void TrainConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("train: gamma must lie in (0, 1)");
  if (gae_lambda < 0.0 || gae_lambda > 1.0)
    throw std::invalid_argument("train: gae_lambda must lie in [0, 1]");
  if (!(clip_eps > 0.0 && clip_eps < 1.0))
    throw std::invalid_argument("train: clip_eps must lie in (0, 1)");
  if (lr_actor <= 0.0 || lr_critic <= 0.0)
    throw std::invalid_argument("train: learning rates must be positive");
  if (epochs <= 0 || minibatch_timesteps <= 0 || chunk_len <= 0)
    throw std::invalid_argument("train: epochs/minibatch/chunk must be positive");
  if (w_rl < 0.0 || w_sup < 0.0 || entropy_coef < 0.0)
    throw std::invalid_argument("train: objective weights must be non-negative");
  if (grad_clip <= 0.0)
    throw std::invalid_argument("train: grad_clip must be positive");
  if (episodes <= 0 || episodes_per_update <= 0)
    throw std::invalid_argument("train: episode counts must be positive");
  if (eval_interval <= 0 || eval_episodes <= 0 || eval_seconds <= 0.0)
    throw std::invalid_argument("train: eval settings must be positive");
  if (stop_patience <= 0)
    throw std::invalid_argument("train: stop_patience must be positive");
}

TrainConfig TrainConfig::from_config(const Config& cfg) {
  TrainConfig t;
  t.gamma = cfg.get_double("train.gamma", t.gamma);
  t.gae_lambda = cfg.get_double("train.gae_lambda", t.gae_lambda);
  t.clip_eps = cfg.get_double("train.clip_eps", t.clip_eps);
  t.lr_actor = cfg.get_double("train.lr_actor", t.lr_actor);
  t.lr_critic = cfg.get_double("train.lr_critic", t.lr_critic);
  t.epochs = cfg.get_int("train.epochs", t.epochs);
  t.minibatch_timesteps =
      cfg.get_int("train.minibatch_timesteps", t.minibatch_timesteps);
  t.chunk_len = cfg.get_int("train.chunk_len", t.chunk_len);
  t.w_rl = cfg.get_double("train.w_rl", t.w_rl);
  t.w_sup = cfg.get_double("train.w_sup", t.w_sup);
  t.entropy_coef = cfg.get_double("train.entropy_coef", t.entropy_coef);
  t.grad_clip = cfg.get_double("train.grad_clip", t.grad_clip);
  t.normalize_advantages =
      cfg.get_bool("train.normalize_advantages", t.normalize_advantages);
  t.episodes = cfg.get_int("train.episodes", t.episodes);
  t.episodes_per_update =
      cfg.get_int("train.episodes_per_update", t.episodes_per_update);
  t.eval_interval = cfg.get_int("train.eval_interval", t.eval_interval);
  t.eval_episodes = cfg.get_int("train.eval_episodes", t.eval_episodes);
  t.eval_seconds = cfg.get_double("train.eval_seconds", t.eval_seconds);
  t.stop_success = cfg.get_double("train.stop_success", t.stop_success);
  t.stop_patience = cfg.get_int("train.stop_patience", t.stop_patience);
  t.early_stop = cfg.get_bool("train.early_stop", t.early_stop);
  t.seed = static_cast<std::uint64_t>(
      cfg.get_int("train.seed", static_cast<int>(t.seed)));
  t.validate();
  return t;
}

}  // namespace dcmwalk::learn
