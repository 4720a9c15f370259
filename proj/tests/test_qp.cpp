#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "dcmwalk/core/rng.hpp"
#include "dcmwalk/qp/solver.hpp"
#include "doctest.h"

using Eigen::MatrixXd;
using Eigen::VectorXd;
using namespace dcmwalk;

namespace {

double objective(const qp::QpProblem& p, const VectorXd& x) {
  return 0.5 * x.dot(p.H * x) + p.g.dot(x);
}

qp::QpProblem empty_constraints(int n) {
  qp::QpProblem p;
  p.A = MatrixXd(0, n);
  p.b = VectorXd(0);
  p.C = MatrixXd(0, n);
  p.d = VectorXd(0);
  return p;
}

MatrixXd random_matrix(Rng& rng, int rows, int cols) {
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

VectorXd random_vector(Rng& rng, int n) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

// Feasible by construction: x0 satisfies the equalities exactly and the
// inequalities with nonnegative slack (a share of rows touch x0 exactly).
struct RandomQp {
  qp::QpProblem p;
  VectorXd x0;
};

RandomQp random_feasible_qp(Rng& rng, int n, int me, int mi) {
  RandomQp out;
  out.p = empty_constraints(n);
  const MatrixXd Q = random_matrix(rng, n, n);
  out.p.H = Q.transpose() * Q + (0.1 + rng.uniform()) * MatrixXd::Identity(n, n);
  out.p.g = random_vector(rng, n);
  out.x0 = random_vector(rng, n);
  if (me > 0) {
    out.p.A = random_matrix(rng, me, n);
    out.p.b = out.p.A * out.x0;
  }
  if (mi > 0) {
    out.p.C = random_matrix(rng, mi, n);
    VectorXd slack(mi);
    for (int i = 0; i < mi; ++i)
      slack(i) = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    out.p.d = out.p.C * out.x0 + slack;
  }
  return out;
}

// Sort-based Euclidean projection onto the probability simplex.
VectorXd project_simplex(const VectorXd& c) {
  const int n = static_cast<int>(c.size());
  std::vector<double> u(c.data(), c.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (int j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / (j + 1);
    if (u[j] - t > 0.0) {
      rho = j + 1;
      theta = t;
    }
  }
  (void)rho;
  return (c.array() - theta).cwiseMax(0.0);
}

}  // namespace

TEST_CASE("validate rejects inconsistent problem data") {
  qp::QpProblem p = empty_constraints(2);
  p.H = MatrixXd::Identity(2, 2);
  p.g = VectorXd::Zero(2);
  CHECK_NOTHROW(p.validate());

  qp::QpProblem bad = p;
  bad.H = MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.H(0, 1) = 0.5;  // asymmetric
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.A = MatrixXd::Ones(1, 3);
  bad.b = VectorXd::Ones(1);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.C = MatrixXd::Ones(2, 2);
  bad.d = VectorXd::Ones(1);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("unconstrained quadratic recovers the analytic minimizer") {
  qp::QpProblem p = empty_constraints(2);
  p.H = MatrixXd::Identity(2, 2);
  p.g = VectorXd::Constant(2, -1.0);
  qp::QpSolver solver;
  const auto sol = solver.solve(p);
  CHECK(sol.status == qp::QpStatus::kOptimal);
  CHECK(std::abs(sol.x(0) - 1.0) < 1e-10);
  CHECK(std::abs(sol.x(1) - 1.0) < 1e-10);
}

TEST_CASE("single bound: multiplier matches hand-derived KKT point") {
  // minimize 0.5 x^2 subject to x >= 1, optimum x = 1 with multiplier 1.
  qp::QpProblem p = empty_constraints(1);
  p.H = MatrixXd::Identity(1, 1);
  p.g = VectorXd::Zero(1);
  p.C = -MatrixXd::Identity(1, 1);
  p.d = VectorXd::Constant(1, -1.0);
  qp::QpSolver solver;
  const auto sol = solver.solve(p);
  CHECK(sol.status == qp::QpStatus::kOptimal);
  CHECK(std::abs(sol.x(0) - 1.0) < 1e-6);
  CHECK(std::abs(sol.y_ineq(0) - 1.0) < 1e-6);
  CHECK(qp::kkt_error(p, sol.x, sol.y_eq, sol.y_ineq) < 1e-6);
}

TEST_CASE("box-constrained least squares clamps coordinatewise") {
  Rng rng(401);
  const int n = 8;
  qp::QpProblem p = empty_constraints(n);
  p.H = MatrixXd::Identity(n, n);
  const VectorXd c = 2.0 * random_vector(rng, n);
  p.g = -c;
  p.C.resize(2 * n, n);
  p.C << MatrixXd::Identity(n, n), -MatrixXd::Identity(n, n);
  p.d = VectorXd::Ones(2 * n);
  qp::QpSolver solver;
  const auto sol = solver.solve(p);
  CHECK(sol.status == qp::QpStatus::kOptimal);
  const VectorXd expect = c.cwiseMax(-1.0).cwiseMin(1.0);
  CHECK((sol.x - expect).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("projection onto the simplex matches the sort-based formula") {
  Rng rng(402);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 12);
    qp::QpProblem p = empty_constraints(n);
    p.H = MatrixXd::Identity(n, n);
    const VectorXd c = random_vector(rng, n);
    p.g = -c;
    p.A = MatrixXd::Ones(1, n);
    p.b = VectorXd::Ones(1);
    p.C = -MatrixXd::Identity(n, n);
    p.d = VectorXd::Zero(n);
    qp::QpSolver solver;
    const auto sol = solver.solve(p);
    REQUIRE(sol.status == qp::QpStatus::kOptimal);
    const VectorXd expect = project_simplex(c);
    CHECK((sol.x - expect).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("equality-only path matches a dense KKT solve") {
  Rng rng(403);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 20);
    const int me = rng.uniform_int(0, n);
    auto [p, x0] = random_feasible_qp(rng, n, me, 0);
    (void)x0;
    qp::QpSolver solver;
    const auto sol = solver.solve(p);
    REQUIRE(sol.status == qp::QpStatus::kOptimal);

    MatrixXd K = MatrixXd::Zero(n + me, n + me);
    K.topLeftCorner(n, n) = p.H;
    if (me > 0) {
      K.block(n, 0, me, n) = p.A;
      K.block(0, n, n, me) = p.A.transpose();
    }
    VectorXd rhs(n + me);
    rhs.head(n) = -p.g;
    if (me > 0) rhs.tail(me) = p.b;
    const VectorXd ref = K.fullPivLu().solve(rhs);
    worst = std::max(worst, (sol.x - ref.head(n)).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("inactive inequalities do not perturb the equality solution") {
  Rng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(2, 15);
    const int me = rng.uniform_int(1, n - 1);
    auto [p, x0] = random_feasible_qp(rng, n, me, 0);
    (void)x0;
    qp::QpSolver eq_solver;
    const auto ref = eq_solver.solve(p);
    REQUIRE(ref.status == qp::QpStatus::kOptimal);

    // Add inequalities that are slack at the reference optimum.
    qp::QpProblem loose = p;
    const int mi = rng.uniform_int(1, 2 * n);
    loose.C = random_matrix(rng, mi, n);
    loose.d = loose.C * ref.x + VectorXd::Constant(mi, 10.0);
    qp::QpSolver solver;
    const auto sol = solver.solve(loose);
    REQUIRE(sol.status == qp::QpStatus::kOptimal);
    CHECK((sol.x - ref.x).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("random feasible problems satisfy first-order conditions") {
  Rng rng(405);
  double worst_kkt = 0.0;
  double worst_obj_gap = -1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rng.uniform_int(1, 30);
    const int me = rng.uniform_int(0, std::min(n, 10));
    const int mi = rng.uniform_int(0, 2 * n);
    auto [p, x0] = random_feasible_qp(rng, n, me, mi);
    qp::QpSolver solver;
    const auto sol = solver.solve(p);
    REQUIRE(sol.status == qp::QpStatus::kOptimal);
    worst_kkt = std::max(worst_kkt, qp::kkt_error(p, sol.x, sol.y_eq, sol.y_ineq));
    worst_obj_gap = std::max(worst_obj_gap, objective(p, sol.x) - objective(p, x0));
  }
  CHECK(worst_kkt < 1e-6);
  // The solver never does worse than the feasible anchor point.
  CHECK(worst_obj_gap < 1e-6);
}

TEST_CASE("complementary slackness holds at reported optima") {
  Rng rng(406);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 20);
    auto [p, x0] = random_feasible_qp(rng, n, rng.uniform_int(0, n / 2),
                                      rng.uniform_int(1, 2 * n));
    (void)x0;
    qp::QpSolver solver;
    const auto sol = solver.solve(p);
    REQUIRE(sol.status == qp::QpStatus::kOptimal);
    const VectorXd slack = p.d - p.C * sol.x;
    worst = std::max(worst, sol.y_ineq.cwiseProduct(slack).cwiseAbs().maxCoeff());
    CHECK(sol.y_ineq.minCoeff() >= 0.0);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("warm started resolve agrees with the cold solution") {
  Rng rng(407);
  auto [p, x0] = random_feasible_qp(rng, 12, 3, 10);
  (void)x0;
  qp::QpSolver solver;
  const auto first = solver.solve(p);
  REQUIRE(first.status == qp::QpStatus::kOptimal);
  const auto second = solver.solve(p);
  REQUIRE(second.status == qp::QpStatus::kOptimal);
  CHECK((second.x - first.x).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(second.iterations <= first.iterations);

  // A small perturbation should also resolve quickly from the warm start.
  qp::QpProblem shifted = p;
  shifted.g += 0.01 * random_vector(rng, 12);
  const auto third = solver.solve(shifted);
  CHECK(third.status == qp::QpStatus::kOptimal);
  CHECK(qp::kkt_error(shifted, third.x, third.y_eq, third.y_ineq) < 1e-6);
}

TEST_CASE("contradictory inequalities are flagged infeasible") {
  qp::QpProblem p = empty_constraints(1);
  p.H = MatrixXd::Identity(1, 1);
  p.g = VectorXd::Zero(1);
  p.C.resize(2, 1);
  p.C << 1.0, -1.0;  // x <= -1 and x >= 1
  p.d = VectorXd::Constant(2, -1.0);
  qp::QpSolver solver;
  const auto sol = solver.solve(p);
  CHECK(sol.status == qp::QpStatus::kInfeasible);
}

TEST_CASE("equality conflicting with a bound is flagged infeasible") {
  qp::QpProblem p = empty_constraints(2);
  p.H = MatrixXd::Identity(2, 2);
  p.g = VectorXd::Zero(2);
  p.A = MatrixXd::Zero(1, 2);
  p.A(0, 0) = 1.0;  // x0 = 0
  p.b = VectorXd::Zero(1);
  p.C = MatrixXd::Zero(1, 2);
  p.C(0, 0) = -1.0;  // x0 >= 1
  p.d = VectorXd::Constant(1, -1.0);
  qp::QpSolver solver;
  const auto sol = solver.solve(p);
  CHECK(sol.status == qp::QpStatus::kInfeasible);
}

TEST_CASE("redundant duplicated rows still yield a feasible optimum") {
  Rng rng(408);
  auto [p, x0] = random_feasible_qp(rng, 8, 2, 6);
  (void)x0;
  // Duplicate every inequality row; multipliers become non-unique but the
  // primal solution must stay clean.
  qp::QpProblem dup = p;
  dup.C.resize(12, 8);
  dup.C << p.C, p.C;
  dup.d.resize(12);
  dup.d << p.d, p.d;
  qp::QpSolver a, b;
  const auto ref = a.solve(p);
  const auto sol = b.solve(dup);
  REQUIRE(ref.status == qp::QpStatus::kOptimal);
  REQUIRE(sol.status == qp::QpStatus::kOptimal);
  CHECK((sol.x - ref.x).cwiseAbs().maxCoeff() < 1e-5);
  CHECK((dup.C * sol.x - dup.d).maxCoeff() < 1e-6);
}
