#pragma once

#include <vector>

#include "dcmwalk/nn/graph.hpp"

namespace dcmwalk::nn {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First-order adaptive-moment optimizer with bias correction.
class Adam {
 public:
  Adam(std::vector<Param*> params, const AdamConfig& cfg = {});

  void zero_grad();
  double grad_norm() const;  // global L2 norm across all parameters

  // Scales gradients down if their global norm exceeds max_norm.
  // Returns the pre-clip norm.
  double clip_grad_norm(double max_norm);

  void step();

  void set_lr(double lr) { cfg_.lr = lr; }
  double lr() const { return cfg_.lr; }
  int steps_taken() const { return t_; }
  const std::vector<Param*>& params() const { return params_; }

  // Optimizer state exposure for checkpoint resume.
  std::vector<Eigen::MatrixXd>& first_moments() { return m_; }
  std::vector<Eigen::MatrixXd>& second_moments() { return v_; }
  void set_steps_taken(int t) { t_ = t; }

 private:
  std::vector<Param*> params_;
  AdamConfig cfg_;
  std::vector<Eigen::MatrixXd> m_, v_;
  int t_ = 0;
};

}  // namespace dcmwalk::nn
