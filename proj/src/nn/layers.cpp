#include "dcmwalk/nn/layers.hpp"

#include <cmath>

namespace dcmwalk::nn {

namespace {

// Uniform fan-in scaling keeps activations near unit variance at init.
Eigen::MatrixXd uniform_init(int rows, int cols, int fan_in, Rng& rng) {
  const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.uniform(-s, s);
  return m;
}

}  // namespace

void Dense::init(int in, int out, Rng& rng) {
  W = Param(uniform_init(out, in, in, rng));
  b = Param(Eigen::MatrixXd::Zero(out, 1));
}

void Dense::init_zero(int in, int out) {
  W = Param(Eigen::MatrixXd::Zero(out, in));
  b = Param(Eigen::MatrixXd::Zero(out, 1));
}

Var Dense::forward(Graph& g, Var x) const {
  // Params are logically const during a forward pass; the graph only writes
  // their gradients on backward.
  auto& self = const_cast<Dense&>(*this);
  return g.add(g.matmul(g.param(self.W), x), g.param(self.b));
}

std::vector<Param*> Dense::params() { return {&W, &b}; }

void GruLayer::init(int in, int hidden, Rng& rng) {
  Wz = Param(uniform_init(hidden, in, in, rng));
  Uz = Param(uniform_init(hidden, hidden, hidden, rng));
  bz = Param(Eigen::MatrixXd::Zero(hidden, 1));
  Wr = Param(uniform_init(hidden, in, in, rng));
  Ur = Param(uniform_init(hidden, hidden, hidden, rng));
  br = Param(Eigen::MatrixXd::Zero(hidden, 1));
  Wn = Param(uniform_init(hidden, in, in, rng));
  Un = Param(uniform_init(hidden, hidden, hidden, rng));
  bn = Param(Eigen::MatrixXd::Zero(hidden, 1));
}

Var GruLayer::step(Graph& g, Var x, Var h) const {
  auto& self = const_cast<GruLayer&>(*this);
  const Var z = g.sigmoid(g.add(
      g.add(g.matmul(g.param(self.Wz), x), g.matmul(g.param(self.Uz), h)),
      g.param(self.bz)));
  const Var r = g.sigmoid(g.add(
      g.add(g.matmul(g.param(self.Wr), x), g.matmul(g.param(self.Ur), h)),
      g.param(self.br)));
  const Var n = g.tanh_op(
      g.add(g.matmul(g.param(self.Wn), x),
            g.cmul(r, g.add(g.matmul(g.param(self.Un), h), g.param(self.bn)))));
  // (1 - z) .* n + z .* h
  const Var one_minus_z = g.add_scalar(g.scale(z, -1.0), 1.0);
  return g.add(g.cmul(one_minus_z, n), g.cmul(z, h));
}

Eigen::Index GruLayer::param_count() const {
  return Wz.size() + Uz.size() + bz.size() + Wr.size() + Ur.size() +
         br.size() + Wn.size() + Un.size() + bn.size();
}

std::vector<Param*> GruLayer::params() {
  return {&Wz, &Uz, &bz, &Wr, &Ur, &br, &Wn, &Un, &bn};
}

}  // namespace dcmwalk::nn
