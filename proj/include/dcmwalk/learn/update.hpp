#pragma once

#include <vector>

#include "dcmwalk/core/rng.hpp"
#include "dcmwalk/learn/losses.hpp"
#include "dcmwalk/learn/train_config.hpp"
#include "dcmwalk/nn/adam.hpp"

namespace dcmwalk::learn {

struct UpdateDiagnostics {
  double surrogate = 0.0;   // clipped PPO objective (loss sign)
  double l_rl = 0.0;        // surrogate - entropy_coef * entropy
  double l_sup = 0.0;       // supervision NLL
  double l_critic = 0.0;    // value MSE against GAE returns
  double total = 0.0;       // w_rl * l_rl + w_sup * l_sup
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double grad_norm_actor = 0.0;   // mean pre-clip norm over minibatches
  double grad_norm_critic = 0.0;
  double adv_mean = 0.0;          // post-normalization diagnostics
  double adv_std = 0.0;
  int minibatches = 0;
  int skipped = 0;  // minibatches dropped on a non-finite loss
  int transitions = 0;
};

// Writes GAE advantages and returns into the buffer's transitions and, when
// enabled, normalizes the advantages to zero mean and unit variance across
// the whole buffer. Exposed separately so tests and diagnostics can inspect
// the prepared buffer.
void prepare_advantages(std::vector<EpisodeResult>& buffer,
                        const TrainConfig& cfg);

// One PPO + supervision update over the collected episodes: advantage
// preparation, then config.epochs passes of shuffled truncated-BPTT chunk
// minibatches. Actor gradients of
//   w_rl * (surrogate - entropy_coef * entropy) + w_sup * supervision NLL
// accumulate across the chunk graphs of a minibatch before a single clipped
// optimizer step; the critic regresses the GAE returns in its own step (only
// when the RL objective is active). The optimizers must hold the networks'
// parameters. The variant maps onto the objective weights: ResRL drops the
// supervision term, IL drops the RL term, and with both weights zero the
// update is a no-op. A non-finite minibatch loss skips that minibatch and is
// counted in the diagnostics.
UpdateDiagnostics update(Variant v, const nn::PolicyNet& net,
                         const nn::CriticNet& critic, nn::Adam& actor_opt,
                         nn::Adam& critic_opt,
                         std::vector<EpisodeResult>& buffer,
                         const Vector6d& bound, const TrainConfig& cfg,
                         Rng& shuffle_rng);

}  // namespace dcmwalk::learn
