#include "dcmwalk/nn/graph.hpp"

#include <stdexcept>

namespace dcmwalk::nn {

namespace {

void check_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

Var Graph::push(Eigen::MatrixXd value, bool needs_grad,
                std::function<void(Graph&, const Node&)> back) {
  Node n;
  n.value = std::move(value);
  n.back = std::move(back);
  n.needs_grad = needs_grad;
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

void Graph::accumulate(int idx, const Eigen::MatrixXd& g) {
  Node& n = nodes_[idx];
  if (!n.needs_grad) return;
  if (n.grad.size() == 0) n.grad = Eigen::MatrixXd::Zero(n.value.rows(), n.value.cols());
  n.grad += g;
}

Var Graph::constant(const Eigen::MatrixXd& v) { return push(v, false, nullptr); }

Var Graph::param(Param& p) {
  Param* ptr = &p;
  return push(p.value, true, [ptr](Graph&, const Node& self) {
    if (ptr->grad.size() == 0)
      ptr->grad = Eigen::MatrixXd::Zero(ptr->value.rows(), ptr->value.cols());
    ptr->grad += self.grad;
  });
}

Var Graph::matmul(Var a, Var b) {
  const Eigen::MatrixXd& av = nodes_[a.idx].value;
  const Eigen::MatrixXd& bv = nodes_[b.idx].value;
  if (av.cols() != bv.rows()) throw std::invalid_argument("matmul: inner dims");
  const bool ng = nodes_[a.idx].needs_grad || nodes_[b.idx].needs_grad;
  return push(av * bv, ng, [a, b](Graph& g, const Node& self) {
    g.accumulate(a.idx, self.grad * g.nodes_[b.idx].value.transpose());
    g.accumulate(b.idx, g.nodes_[a.idx].value.transpose() * self.grad);
  });
}

// Shared broadcast-aware binary elementwise machinery: op encodes the value
// and the two partials as lambdas over arrays.
Var Graph::add(Var a, Var b) {
  const Eigen::MatrixXd& av = nodes_[a.idx].value;
  const Eigen::MatrixXd& bv = nodes_[b.idx].value;
  const bool ng = nodes_[a.idx].needs_grad || nodes_[b.idx].needs_grad;
  Eigen::MatrixXd out;
  if (is_scalar(bv) && !is_scalar(av)) {
    out = av.array() + bv(0, 0);
  } else if (bv.cols() == 1 && av.cols() > 1 && bv.rows() == av.rows()) {
    out = av.colwise() + bv.col(0);
  } else {
    check_same_shape(av, bv, "add");
    out = av + bv;
  }
  return push(std::move(out), ng, [a, b](Graph& g, const Node& self) {
    const Eigen::MatrixXd& bv = g.nodes_[b.idx].value;
    const Eigen::MatrixXd& av = g.nodes_[a.idx].value;
    g.accumulate(a.idx, self.grad);
    if (is_scalar(bv) && !is_scalar(av)) {
      Eigen::MatrixXd gb(1, 1);
      gb(0, 0) = self.grad.sum();
      g.accumulate(b.idx, gb);
    } else if (bv.cols() == 1 && av.cols() > 1) {
      g.accumulate(b.idx, self.grad.rowwise().sum());
    } else {
      g.accumulate(b.idx, self.grad);
    }
  });
}

Var Graph::sub(Var a, Var b) { return add(a, scale(b, -1.0)); }

Var Graph::cmul(Var a, Var b) {
  const Eigen::MatrixXd& av = nodes_[a.idx].value;
  const Eigen::MatrixXd& bv = nodes_[b.idx].value;
  const bool ng = nodes_[a.idx].needs_grad || nodes_[b.idx].needs_grad;
  Eigen::MatrixXd out;
  if (is_scalar(bv) && !is_scalar(av)) {
    out = av.array() * bv(0, 0);
  } else if (bv.cols() == 1 && av.cols() > 1 && bv.rows() == av.rows()) {
    out = av.array().colwise() * bv.col(0).array();
  } else {
    check_same_shape(av, bv, "cmul");
    out = av.array() * bv.array();
  }
  return push(std::move(out), ng, [a, b](Graph& g, const Node& self) {
    const Eigen::MatrixXd& av = g.nodes_[a.idx].value;
    const Eigen::MatrixXd& bv = g.nodes_[b.idx].value;
    if (is_scalar(bv) && !is_scalar(av)) {
      g.accumulate(a.idx, self.grad * bv(0, 0));
      Eigen::MatrixXd gb(1, 1);
      gb(0, 0) = (self.grad.array() * av.array()).sum();
      g.accumulate(b.idx, gb);
    } else if (bv.cols() == 1 && av.cols() > 1) {
      g.accumulate(a.idx, self.grad.array().colwise() * bv.col(0).array());
      g.accumulate(b.idx, (self.grad.array() * av.array()).rowwise().sum().matrix());
    } else {
      g.accumulate(a.idx, (self.grad.array() * bv.array()).matrix());
      g.accumulate(b.idx, (self.grad.array() * av.array()).matrix());
    }
  });
}

Var Graph::cdiv(Var a, Var b) {
  const Eigen::MatrixXd& av = nodes_[a.idx].value;
  const Eigen::MatrixXd& bv = nodes_[b.idx].value;
  check_same_shape(av, bv, "cdiv");
  const bool ng = nodes_[a.idx].needs_grad || nodes_[b.idx].needs_grad;
  return push((av.array() / bv.array()).matrix(), ng,
              [a, b](Graph& g, const Node& self) {
                const auto& av = g.nodes_[a.idx].value.array();
                const auto& bv = g.nodes_[b.idx].value.array();
                g.accumulate(a.idx, (self.grad.array() / bv).matrix());
                g.accumulate(b.idx, (-self.grad.array() * av / (bv * bv)).matrix());
              });
}

Var Graph::scale(Var a, double s) {
  return push(nodes_[a.idx].value * s, nodes_[a.idx].needs_grad,
              [a, s](Graph& g, const Node& self) {
                g.accumulate(a.idx, self.grad * s);
              });
}

Var Graph::add_scalar(Var a, double s) {
  return push((nodes_[a.idx].value.array() + s).matrix(),
              nodes_[a.idx].needs_grad, [a](Graph& g, const Node& self) {
                g.accumulate(a.idx, self.grad);
              });
}

Var Graph::sigmoid(Var a) {
  Eigen::MatrixXd v =
      (1.0 / (1.0 + (-nodes_[a.idx].value.array()).exp())).matrix();
  return push(std::move(v), nodes_[a.idx].needs_grad,
              [a](Graph& g, const Node& self) {
                const auto& y = self.value.array();
                g.accumulate(a.idx, (self.grad.array() * y * (1.0 - y)).matrix());
              });
}

Var Graph::tanh_op(Var a) {
  return push(nodes_[a.idx].value.array().tanh().matrix(),
              nodes_[a.idx].needs_grad, [a](Graph& g, const Node& self) {
                const auto& y = self.value.array();
                g.accumulate(a.idx, (self.grad.array() * (1.0 - y * y)).matrix());
              });
}

Var Graph::elu(Var a) {
  const auto& x = nodes_[a.idx].value.array();
  Eigen::MatrixXd v = x.max(0.0).matrix();
  v.array() += (x.min(0.0).exp() - 1.0) * (x < 0.0).cast<double>();
  return push(std::move(v), nodes_[a.idx].needs_grad,
              [a](Graph& g, const Node& self) {
                const auto& x = g.nodes_[a.idx].value.array();
                const auto& y = self.value.array();
                // d/dx = 1 for x >= 0, exp(x) = y + 1 for x < 0
                Eigen::ArrayXXd d = (x >= 0.0).cast<double>() +
                                    (x < 0.0).cast<double>() * (y + 1.0);
                g.accumulate(a.idx, (self.grad.array() * d).matrix());
              });
}

Var Graph::exp_op(Var a) {
  return push(nodes_[a.idx].value.array().exp().matrix(),
              nodes_[a.idx].needs_grad, [a](Graph& g, const Node& self) {
                g.accumulate(a.idx,
                             (self.grad.array() * self.value.array()).matrix());
              });
}

Var Graph::log_op(Var a) {
  return push(nodes_[a.idx].value.array().log().matrix(),
              nodes_[a.idx].needs_grad, [a](Graph& g, const Node& self) {
                g.accumulate(
                    a.idx,
                    (self.grad.array() / g.nodes_[a.idx].value.array()).matrix());
              });
}

Var Graph::square(Var a) {
  return push(nodes_[a.idx].value.array().square().matrix(),
              nodes_[a.idx].needs_grad, [a](Graph& g, const Node& self) {
                g.accumulate(a.idx, (2.0 * self.grad.array() *
                                     g.nodes_[a.idx].value.array())
                                        .matrix());
              });
}

Var Graph::minimum(Var a, Var b) {
  const Eigen::MatrixXd& av = nodes_[a.idx].value;
  const Eigen::MatrixXd& bv = nodes_[b.idx].value;
  check_same_shape(av, bv, "minimum");
  const bool ng = nodes_[a.idx].needs_grad || nodes_[b.idx].needs_grad;
  return push(av.cwiseMin(bv), ng, [a, b](Graph& g, const Node& self) {
    const auto& av = g.nodes_[a.idx].value.array();
    const auto& bv = g.nodes_[b.idx].value.array();
    const Eigen::ArrayXXd take_a = (av <= bv).cast<double>();
    g.accumulate(a.idx, (self.grad.array() * take_a).matrix());
    g.accumulate(b.idx, (self.grad.array() * (1.0 - take_a)).matrix());
  });
}

Var Graph::clamp(Var a, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("clamp: lo > hi");
  return push(nodes_[a.idx].value.array().max(lo).min(hi).matrix(),
              nodes_[a.idx].needs_grad, [a, lo, hi](Graph& g, const Node& self) {
                const auto& x = g.nodes_[a.idx].value.array();
                const Eigen::ArrayXXd inside =
                    ((x > lo) && (x < hi)).cast<double>();
                g.accumulate(a.idx, (self.grad.array() * inside).matrix());
              });
}

Var Graph::sum(Var a) {
  Eigen::MatrixXd v(1, 1);
  v(0, 0) = nodes_[a.idx].value.sum();
  return push(std::move(v), nodes_[a.idx].needs_grad,
              [a](Graph& g, const Node& self) {
                const Eigen::MatrixXd& av = g.nodes_[a.idx].value;
                g.accumulate(a.idx, Eigen::MatrixXd::Constant(
                                        av.rows(), av.cols(), self.grad(0, 0)));
              });
}

Var Graph::mean(Var a) {
  return scale(sum(a), 1.0 / static_cast<double>(nodes_[a.idx].value.size()));
}

Var Graph::colsum(Var a) {
  return push(nodes_[a.idx].value.colwise().sum(), nodes_[a.idx].needs_grad,
              [a](Graph& g, const Node& self) {
                const Eigen::MatrixXd& av = g.nodes_[a.idx].value;
                Eigen::MatrixXd ga(av.rows(), av.cols());
                for (Eigen::Index c = 0; c < av.cols(); ++c)
                  ga.col(c).setConstant(self.grad(0, c));
                g.accumulate(a.idx, ga);
              });
}

double Graph::scalar(Var v) const {
  const Eigen::MatrixXd& m = nodes_[v.idx].value;
  if (!is_scalar(m)) throw std::invalid_argument("scalar: var is not 1x1");
  return m(0, 0);
}

void Graph::backward(Var loss) {
  Node& top = nodes_[loss.idx];
  if (!is_scalar(top.value))
    throw std::invalid_argument("backward: loss must be scalar");
  top.grad = Eigen::MatrixXd::Ones(1, 1);
  for (int i = loss.idx; i >= 0; --i) {
    Node& n = nodes_[i];
    if (n.needs_grad && n.back && n.grad.size() != 0) n.back(*this, n);
  }
}

void Graph::clear() { nodes_.clear(); }

}  // namespace dcmwalk::nn
