#pragma once

#include <vector>

#include "dcmwalk/core/config.hpp"
#include "dcmwalk/core/types.hpp"
#include "dcmwalk/nn/layers.hpp"

namespace dcmwalk::nn {

struct PolicyNetConfig {
  int input_dim = 29;
  int action_dim = 6;
  int rnn_layers = 2;
  int rnn_hidden = 64;
  int head_hidden = 0;  // 0 = linear head directly on the recurrent state
  double log_std_init = -1.0;
  double log_std_min = -5.0;
  double log_std_max = 2.0;

  void validate() const;
  static PolicyNetConfig desk();   // 2 x 64, linear head
  static PolicyNetConfig paper();  // 2 x 256, 512-unit head layer
  static PolicyNetConfig from_config(const Config& cfg);
};

// Recurrent Gaussian actor: GRU stack, optional ELU head layer, zero-
// initialized linear mean output, and a global learnable log-std vector.
class PolicyNet {
 public:
  PolicyNet(const PolicyNetConfig& cfg, Rng& rng);

  // One batched timestep. x is input_dim x B; hidden holds one H x B state
  // per layer and is replaced with the post-step states. Returns the action
  // mean (action_dim x B).
  Var forward(Graph& g, Var x, std::vector<Var>& hidden) const;

  // Clamped log standard deviation as a graph variable (action_dim x 1).
  Var log_std_var(Graph& g) const;

  // Single-sample forward on a scratch graph; hidden updated in place.
  // Throws on non-finite outputs with a parameter summary in the message.
  Vector6d act(const Eigen::VectorXd& obs,
               std::vector<Eigen::VectorXd>& hidden,
               Vector6d* std_out = nullptr) const;

  std::vector<Eigen::VectorXd> initial_hidden() const;
  std::vector<Eigen::MatrixXd> initial_hidden_batch(int batch) const;

  Eigen::Index param_count() const;
  std::vector<Param*> params();
  const PolicyNetConfig& config() const { return cfg_; }
  Vector6d current_std() const;

 private:
  PolicyNetConfig cfg_;
  std::vector<GruLayer> gru_;
  Dense head_pre_;  // used only when cfg_.head_hidden > 0
  Dense head_;
  Param log_std_;
};

struct CriticNetConfig {
  int input_dim = 55;
  std::vector<int> hidden = {512, 256, 256};

  void validate() const;
  static CriticNetConfig from_config(const Config& cfg);
};

// Feed-forward value function over privileged observations, ELU activations.
class CriticNet {
 public:
  CriticNet(const CriticNetConfig& cfg, Rng& rng);

  Var forward(Graph& g, Var x) const;  // 1 x B
  double value(const Eigen::VectorXd& obs) const;

  Eigen::Index param_count() const;
  std::vector<Param*> params();
  const CriticNetConfig& config() const { return cfg_; }

 private:
  CriticNetConfig cfg_;
  std::vector<Dense> layers_;
  Dense out_;
};

}  // namespace dcmwalk::nn
