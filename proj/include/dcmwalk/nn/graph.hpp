#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace dcmwalk::nn {

// Trainable tensor living outside any graph. Gradients accumulate across
// backward passes until zeroed by the optimizer.
struct Param {
  Eigen::MatrixXd value;
  Eigen::MatrixXd grad;

  Param() = default;
  explicit Param(Eigen::MatrixXd v)
      : value(std::move(v)), grad(Eigen::MatrixXd::Zero(value.rows(), value.cols())) {}

  void zero_grad() { grad.setZero(); }
  Eigen::Index size() const { return value.size(); }
};

struct Var {
  int idx = -1;
};

// Dynamic reverse-mode tape over dense matrices. Values are computed eagerly;
// backward() replays the tape in reverse. Broadcasting rules for binary
// elementwise ops: operands must have equal shapes, or the second operand is
// a column vector (broadcast across columns) or a 1x1 scalar.
class Graph {
 public:
  Var constant(const Eigen::MatrixXd& v);
  Var param(Param& p);

  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var cmul(Var a, Var b);
  Var cdiv(Var a, Var b);
  Var scale(Var a, double s);
  Var add_scalar(Var a, double s);

  Var sigmoid(Var a);
  Var tanh_op(Var a);
  Var elu(Var a);
  Var exp_op(Var a);
  Var log_op(Var a);
  Var square(Var a);

  Var minimum(Var a, Var b);
  Var clamp(Var a, double lo, double hi);

  Var sum(Var a);      // 1x1
  Var mean(Var a);     // 1x1
  Var colsum(Var a);   // 1xC, per-column (per-sample) reduction

  const Eigen::MatrixXd& value(Var v) const { return nodes_[v.idx].value; }
  double scalar(Var v) const;

  // Seeds d(loss) = 1 and accumulates gradients into every reachable Param.
  // loss must be 1x1.
  void backward(Var loss);

  int size() const { return static_cast<int>(nodes_.size()); }
  void clear();

 private:
  struct Node {
    Eigen::MatrixXd value;
    Eigen::MatrixXd grad;
    std::function<void(Graph&, const Node&)> back;
    bool needs_grad = false;
  };

  Var push(Eigen::MatrixXd value, bool needs_grad,
           std::function<void(Graph&, const Node&)> back);
  void accumulate(int idx, const Eigen::MatrixXd& g);

  // Shape helpers for the broadcasting rules above.
  static bool is_scalar(const Eigen::MatrixXd& m) {
    return m.rows() == 1 && m.cols() == 1;
  }

  std::vector<Node> nodes_;
  friend struct GraphTestPeer;
};

}  // namespace dcmwalk::nn
