#pragma once

#include <vector>

#include "dcmwalk/learn/rollout.hpp"
#include "dcmwalk/nn/graph.hpp"
#include "dcmwalk/nn/policy_net.hpp"

namespace dcmwalk::learn {

// The actor works in a pre-squash Gaussian space: sampled actions u pass
// through bound * tanh(u) before reaching the plant. Ratios, entropy and the
// supervision likelihood are all evaluated in that space, where the squash
// Jacobian is a parameter-free constant and drops out of every gradient.

// Pre-image of a bounded torque: atanh(torque / bound), argument clamped
// into the open interval so saturated targets stay finite.
Vector6d presquash_target(const Vector6d& torque, const Vector6d& bound);

// Diagonal Gaussian log-density of a pre-squash action.
double gaussian_log_prob(const Vector6d& u, const Vector6d& mean,
                         const Vector6d& stddev);

// Closed-form entropy of the actor's current diagonal Gaussian.
double gaussian_entropy(const Vector6d& stddev);

// Contiguous window of one episode, the truncated-BPTT unit. The stored
// recurrent state of the first step seeds the forward pass.
struct Chunk {
  const EpisodeResult* ep = nullptr;
  int begin = 0;
  int len = 0;
};

// Splits every episode into consecutive windows of at most chunk_len steps.
std::vector<Chunk> make_chunks(const std::vector<EpisodeResult>& buffer,
                               int chunk_len);

// Actor losses over one chunk, built on the caller's graph so several chunk
// backward passes can accumulate into the same parameter gradients.
// surrogate and nll are per-step means over the chunk; entropy is the
// closed-form Gaussian entropy shared by every step.
struct ActorChunkLoss {
  nn::Var surrogate;  // clipped PPO objective, already negated (a loss)
  nn::Var nll;        // supervision negative log-likelihood
  nn::Var entropy;
  int steps = 0;
  double clip_fraction = 0.0;  // fraction of steps with the clip active
  double mean_ratio = 0.0;
};

ActorChunkLoss build_actor_chunk_loss(nn::Graph& g, const nn::PolicyNet& net,
                                      const Chunk& chunk,
                                      const Vector6d& bound, double clip_eps);

// Mean supervision NLL over a set of chunks (fresh graphs, gradients
// untouched): the Gaussian negative log-density of the oracle correction's
// pre-image under the actor distribution.
double supervised_loss(const std::vector<Chunk>& chunks,
                       const nn::PolicyNet& net, const Vector6d& bound);

struct PpoLossValue {
  double surrogate = 0.0;    // -E[min(ratio * A, clip(ratio) * A)]
  double entropy = 0.0;
  double actor_total = 0.0;  // surrogate - entropy_coef * entropy
  double critic_mse = 0.0;   // against the GAE returns
};

// Scalar PPO losses over a set of chunks (fresh graphs, gradients
// untouched). Transitions must carry advantages and returns.
PpoLossValue ppo_loss(const std::vector<Chunk>& chunks,
                      const nn::PolicyNet& net, const nn::CriticNet& critic,
                      double clip_eps, double entropy_coef);

}  // namespace dcmwalk::learn
