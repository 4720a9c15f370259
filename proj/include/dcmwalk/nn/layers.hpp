#pragma once

#include <vector>

#include "dcmwalk/core/rng.hpp"
#include "dcmwalk/nn/graph.hpp"

namespace dcmwalk::nn {

// Fully connected layer y = W x + b.
struct Dense {
  Param W;
  Param b;

  void init(int in, int out, Rng& rng);
  void init_zero(int in, int out);
  Var forward(Graph& g, Var x) const;
  Eigen::Index param_count() const { return W.size() + b.size(); }
  std::vector<Param*> params();
};

// Gated recurrent cell:
//   z = sigmoid(Wz x + Uz h + bz)
//   r = sigmoid(Wr x + Ur h + br)
//   n = tanh(Wn x + r .* (Un h + bn))
//   h' = (1 - z) .* n + z .* h
struct GruLayer {
  Param Wz, Uz, bz;
  Param Wr, Ur, br;
  Param Wn, Un, bn;

  void init(int in, int hidden, Rng& rng);
  Var step(Graph& g, Var x, Var h) const;
  int hidden_size() const { return static_cast<int>(Uz.value.rows()); }
  Eigen::Index param_count() const;
  std::vector<Param*> params();
};

}  // namespace dcmwalk::nn
