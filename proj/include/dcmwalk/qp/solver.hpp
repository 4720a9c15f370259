#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>

namespace dcmwalk::qp {

// minimize   0.5 x^T H x + g^T x
// subject to A x = b
//            C x <= d
struct QpProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd C;
  Eigen::VectorXd d;

  int n() const { return static_cast<int>(g.size()); }
  int me() const { return static_cast<int>(b.size()); }
  int mi() const { return static_cast<int>(d.size()); }

  // Throws std::invalid_argument on inconsistent dimensions or an asymmetric
  // Hessian (beyond 1e-10).
  void validate() const;

  // Human-readable dump for debugging failed solves.
  void dump(const std::string& path) const;
};

enum class QpStatus { kOptimal, kMaxIterations, kInfeasible };

struct QpSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd y_eq;    // equality multipliers (free sign)
  Eigen::VectorXd y_ineq;  // inequality multipliers (>= 0 at optimum)
  QpStatus status = QpStatus::kMaxIterations;
  int iterations = 0;
  double primal_residual = std::numeric_limits<double>::infinity();
  double dual_residual = std::numeric_limits<double>::infinity();
};

struct QpSettings {
  double tol = 1e-6;
  int max_iter = 4000;
  double rho = 0.1;          // base ADMM penalty (equalities get rho * 1e3)
  double sigma = 1e-6;       // proximal regularization
  double alpha = 1.6;        // over-relaxation
  bool scaling = true;       // Ruiz diagonal equilibration
  bool polish = true;        // active-set KKT refinement after convergence
  int check_interval = 25;   // residual/rho-adaptation cadence
};

// Dense ADMM solver (OSQP-style splitting) with a direct KKT path for
// equality-only problems. Instances own workspace and warm-start vectors;
// use one instance per control loop/thread.
class QpSolver {
 public:
  QpSolution solve(const QpProblem& p, const QpSettings& s = QpSettings());

  void reset_warm_start() { warm_valid_ = false; }

 private:
  Eigen::VectorXd x_, y_, z_;
  int warm_n_ = -1, warm_m_ = -1;
  bool warm_valid_ = false;
};

// Maximum KKT violation of a candidate solution: stationarity, primal
// feasibility, dual feasibility and complementary slackness. Used by tests
// and by the polishing acceptance check.
double kkt_error(const QpProblem& p, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& y_eq, const Eigen::VectorXd& y_ineq);

}  // namespace dcmwalk::qp
