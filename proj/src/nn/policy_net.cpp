#include "dcmwalk/nn/policy_net.hpp"

#include <sstream>
#include <stdexcept>

namespace dcmwalk::nn {

void PolicyNetConfig::validate() const {
  if (input_dim <= 0 || action_dim <= 0)
    throw std::invalid_argument("policy net: dimensions must be positive");
  if (rnn_layers <= 0 || rnn_hidden <= 0)
    throw std::invalid_argument("policy net: recurrent sizes must be positive");
  if (head_hidden < 0)
    throw std::invalid_argument("policy net: head width must be non-negative");
  if (log_std_min > log_std_max)
    throw std::invalid_argument("policy net: log-std clamp interval empty");
}

PolicyNetConfig PolicyNetConfig::desk() { return PolicyNetConfig{}; }

PolicyNetConfig PolicyNetConfig::paper() {
  PolicyNetConfig c;
  c.rnn_hidden = 256;
  c.head_hidden = 512;
  return c;
}

PolicyNetConfig PolicyNetConfig::from_config(const Config& cfg) {
  const std::string preset = cfg.get_string("policy.preset", "desk");
  PolicyNetConfig c;
  if (preset == "paper") {
    c = paper();
  } else if (preset != "desk") {
    throw std::invalid_argument("policy.preset must be desk or paper");
  }
  c.rnn_layers = cfg.get_int("policy.rnn_layers", c.rnn_layers);
  c.rnn_hidden = cfg.get_int("policy.rnn_hidden", c.rnn_hidden);
  c.head_hidden = cfg.get_int("policy.head_hidden", c.head_hidden);
  c.log_std_init = cfg.get_double("policy.log_std_init", c.log_std_init);
  c.validate();
  return c;
}

PolicyNet::PolicyNet(const PolicyNetConfig& cfg, Rng& rng) : cfg_(cfg) {
  cfg_.validate();
  gru_.resize(cfg_.rnn_layers);
  int in = cfg_.input_dim;
  for (auto& layer : gru_) {
    layer.init(in, cfg_.rnn_hidden, rng);
    in = cfg_.rnn_hidden;
  }
  if (cfg_.head_hidden > 0) {
    head_pre_.init(in, cfg_.head_hidden, rng);
    in = cfg_.head_hidden;
  }
  // Zero output weights: the residual starts as an exact no-op.
  head_.init_zero(in, cfg_.action_dim);
  log_std_ = Param(
      Eigen::MatrixXd::Constant(cfg_.action_dim, 1, cfg_.log_std_init));
}

Var PolicyNet::forward(Graph& g, Var x, std::vector<Var>& hidden) const {
  if (hidden.size() != gru_.size())
    throw std::invalid_argument("policy net: hidden state layer count");
  Var h = x;
  for (size_t i = 0; i < gru_.size(); ++i) {
    hidden[i] = gru_[i].step(g, h, hidden[i]);
    h = hidden[i];
  }
  if (cfg_.head_hidden > 0) h = g.elu(head_pre_.forward(g, h));
  return head_.forward(g, h);
}

Var PolicyNet::log_std_var(Graph& g) const {
  auto& self = const_cast<PolicyNet&>(*this);
  return g.clamp(g.param(self.log_std_), cfg_.log_std_min, cfg_.log_std_max);
}

Vector6d PolicyNet::act(const Eigen::VectorXd& obs,
                        std::vector<Eigen::VectorXd>& hidden,
                        Vector6d* std_out) const {
  if (obs.size() != cfg_.input_dim)
    throw std::invalid_argument("policy net: observation dimension");
  Graph g;
  std::vector<Var> h(hidden.size());
  for (size_t i = 0; i < hidden.size(); ++i) h[i] = g.constant(hidden[i]);
  const Var mean = forward(g, g.constant(obs), h);
  const Eigen::MatrixXd& m = g.value(mean);
  if (!m.allFinite()) {
    std::ostringstream msg;
    msg << "policy net produced non-finite output; params=" << param_count()
        << " log_std=" << log_std_.value.transpose();
    throw std::runtime_error(msg.str());
  }
  for (size_t i = 0; i < hidden.size(); ++i) hidden[i] = g.value(h[i]);
  if (std_out) {
    const Eigen::ArrayXd clamped = log_std_.value.col(0)
                                       .array()
                                       .max(cfg_.log_std_min)
                                       .min(cfg_.log_std_max);
    *std_out = clamped.exp().matrix();
  }
  return m.col(0);
}

std::vector<Eigen::VectorXd> PolicyNet::initial_hidden() const {
  return std::vector<Eigen::VectorXd>(
      gru_.size(), Eigen::VectorXd::Zero(cfg_.rnn_hidden));
}

std::vector<Eigen::MatrixXd> PolicyNet::initial_hidden_batch(int batch) const {
  return std::vector<Eigen::MatrixXd>(
      gru_.size(), Eigen::MatrixXd::Zero(cfg_.rnn_hidden, batch));
}

Eigen::Index PolicyNet::param_count() const {
  Eigen::Index n = log_std_.size() + head_.param_count();
  if (cfg_.head_hidden > 0) n += head_pre_.param_count();
  for (const auto& l : gru_) n += l.param_count();
  return n;
}

std::vector<Param*> PolicyNet::params() {
  std::vector<Param*> out;
  for (auto& l : gru_)
    for (Param* p : l.params()) out.push_back(p);
  if (cfg_.head_hidden > 0)
    for (Param* p : head_pre_.params()) out.push_back(p);
  for (Param* p : head_.params()) out.push_back(p);
  out.push_back(&log_std_);
  return out;
}

Vector6d PolicyNet::current_std() const {
  const Eigen::ArrayXd clamped = log_std_.value.col(0)
                                     .array()
                                     .max(cfg_.log_std_min)
                                     .min(cfg_.log_std_max);
  return clamped.exp().matrix();
}

void CriticNetConfig::validate() const {
  if (input_dim <= 0)
    throw std::invalid_argument("critic net: input dimension must be positive");
  if (hidden.empty())
    throw std::invalid_argument("critic net: needs at least one hidden layer");
  for (int h : hidden)
    if (h <= 0)
      throw std::invalid_argument("critic net: layer sizes must be positive");
}

CriticNetConfig CriticNetConfig::from_config(const Config& cfg) {
  CriticNetConfig c;
  const std::vector<double> sizes = cfg.get_double_list("critic.hidden");
  if (!sizes.empty()) {
    c.hidden.clear();
    for (double s : sizes) c.hidden.push_back(static_cast<int>(s));
  }
  c.validate();
  return c;
}

CriticNet::CriticNet(const CriticNetConfig& cfg, Rng& rng) : cfg_(cfg) {
  cfg_.validate();
  int in = cfg_.input_dim;
  for (int h : cfg_.hidden) {
    Dense d;
    d.init(in, h, rng);
    layers_.push_back(std::move(d));
    in = h;
  }
  out_.init(in, 1, rng);
}

Var CriticNet::forward(Graph& g, Var x) const {
  Var h = x;
  for (const auto& layer : layers_) h = g.elu(layer.forward(g, h));
  return out_.forward(g, h);
}

double CriticNet::value(const Eigen::VectorXd& obs) const {
  if (obs.size() != cfg_.input_dim)
    throw std::invalid_argument("critic net: observation dimension");
  Graph g;
  const Var v = forward(g, g.constant(obs));
  return g.scalar(v);
}

Eigen::Index CriticNet::param_count() const {
  Eigen::Index n = out_.param_count();
  for (const auto& l : layers_) n += l.param_count();
  return n;
}

std::vector<Param*> CriticNet::params() {
  std::vector<Param*> out;
  for (auto& l : layers_)
    for (Param* p : l.params()) out.push_back(p);
  for (Param* p : out_.params()) out.push_back(p);
  return out;
}

}  // namespace dcmwalk::nn
