#include "dcmwalk/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace dcmwalk::nn {

Adam::Adam(std::vector<Param*> params, const AdamConfig& cfg)
    : params_(std::move(params)), cfg_(cfg) {
  if (!(cfg_.lr > 0.0) || !(cfg_.eps > 0.0))
    throw std::invalid_argument("adam: lr and eps must be positive");
  if (cfg_.beta1 < 0.0 || cfg_.beta1 >= 1.0 || cfg_.beta2 < 0.0 ||
      cfg_.beta2 >= 1.0)
    throw std::invalid_argument("adam: betas must lie in [0, 1)");
  for (const Param* p : params_) {
    m_.push_back(Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols()));
  }
}

void Adam::zero_grad() {
  for (Param* p : params_) p->zero_grad();
}

double Adam::grad_norm() const {
  double sq = 0.0;
  for (const Param* p : params_) sq += p->grad.squaredNorm();
  return std::sqrt(sq);
}

double Adam::clip_grad_norm(double max_norm) {
  const double norm = grad_norm();
  if (norm > max_norm && norm > 0.0) {
    const double s = max_norm / norm;
    for (Param* p : params_) p->grad *= s;
  }
  return norm;
}

void Adam::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, t_);
  const double bc2 = 1.0 - std::pow(cfg_.beta2, t_);
  for (size_t i = 0; i < params_.size(); ++i) {
    Param& p = *params_[i];
    m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * p.grad;
    v_[i] = cfg_.beta2 * v_[i].array().matrix() +
            (1.0 - cfg_.beta2) * p.grad.array().square().matrix();
    const Eigen::ArrayXXd mhat = m_[i].array() / bc1;
    const Eigen::ArrayXXd vhat = v_[i].array() / bc2;
    p.value.array() -= cfg_.lr * mhat / (vhat.sqrt() + cfg_.eps);
  }
}

}  // namespace dcmwalk::nn
