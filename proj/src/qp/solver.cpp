#include "dcmwalk/qp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace dcmwalk::qp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void QpProblem::validate() const {
  const int nv = n();
  if (H.rows() != nv || H.cols() != nv)
    throw std::invalid_argument("qp: Hessian dimension mismatch");
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("qp: Hessian not symmetric");
  if (A.size() > 0 && A.cols() != nv)
    throw std::invalid_argument("qp: equality matrix width mismatch");
  if (A.rows() != me())
    throw std::invalid_argument("qp: equality rhs length mismatch");
  if (C.size() > 0 && C.cols() != nv)
    throw std::invalid_argument("qp: inequality matrix width mismatch");
  if (C.rows() != mi())
    throw std::invalid_argument("qp: inequality rhs length mismatch");
}

void QpProblem::dump(const std::string& path) const {
  std::ofstream out(path);
  out.precision(17);
  out << "n " << n() << " me " << me() << " mi " << mi() << "\n";
  out << "H\n" << H << "\ng\n" << g.transpose() << "\n";
  out << "A\n" << A << "\nb\n" << b.transpose() << "\n";
  out << "C\n" << C << "\nd\n" << d.transpose() << "\n";
}

double kkt_error(const QpProblem& p, const VectorXd& x, const VectorXd& y_eq,
                 const VectorXd& y_ineq) {
  double err = 0.0;
  VectorXd stat = p.H * x + p.g;
  if (p.me() > 0) stat += p.A.transpose() * y_eq;
  if (p.mi() > 0) stat += p.C.transpose() * y_ineq;
  err = stat.cwiseAbs().maxCoeff();
  if (p.me() > 0)
    err = std::max(err, (p.A * x - p.b).cwiseAbs().maxCoeff());
  if (p.mi() > 0) {
    const VectorXd slack = p.d - p.C * x;
    err = std::max(err, std::max(0.0, (-slack).maxCoeff()));
    err = std::max(err, std::max(0.0, (-y_ineq).maxCoeff()));
    err = std::max(err, y_ineq.cwiseProduct(slack).cwiseAbs().maxCoeff());
  }
  return err;
}

namespace {

struct Workspace {
  // Unified constraints l <= M x <= u in scaled space.
  MatrixXd M;
  VectorXd l, u;
  MatrixXd H;
  VectorXd g;
  VectorXd D, E;     // scaling diagonals (x = D x_scaled, y = E y_scaled)
  VectorXd rho;      // per-row penalty
  Eigen::LLT<MatrixXd> llt;
};

void ruiz_equilibrate(Workspace& w) {
  const int n = static_cast<int>(w.g.size());
  const int m = static_cast<int>(w.l.size());
  w.D = VectorXd::Ones(n);
  w.E = VectorXd::Ones(m);
  for (int iter = 0; iter < 10; ++iter) {
    VectorXd dx(n), dz(m);
    for (int j = 0; j < n; ++j) {
      double norm = w.H.col(j).cwiseAbs().maxCoeff();
      if (m > 0) norm = std::max(norm, w.M.col(j).cwiseAbs().maxCoeff());
      dx(j) = 1.0 / std::sqrt(std::clamp(norm, 1e-6, 1e6));
    }
    for (int i = 0; i < m; ++i) {
      const double norm = w.M.row(i).cwiseAbs().maxCoeff();
      dz(i) = 1.0 / std::sqrt(std::clamp(norm, 1e-6, 1e6));
    }
    w.H = dx.asDiagonal() * w.H * dx.asDiagonal();
    w.g = dx.cwiseProduct(w.g);
    if (m > 0) {
      w.M = dz.asDiagonal() * w.M * dx.asDiagonal();
      w.l = dz.cwiseProduct(w.l);
      w.u = dz.cwiseProduct(w.u);
    }
    w.D = w.D.cwiseProduct(dx);
    w.E = w.E.cwiseProduct(dz);
  }
}

void factorize(Workspace& w, double sigma) {
  MatrixXd P = w.H;
  P.diagonal().array() += sigma;
  if (w.l.size() > 0)
    P += w.M.transpose() * w.rho.asDiagonal() * w.M;
  w.llt.compute(P);
}

// Dual active-set refinement in the style of Lawson-Hanson NNLS. Requires a
// positive definite Hessian. The primal variable is eliminated through
// x = -H^{-1}(g + A^T nu + C^T lambda) and the dual is minimized over
// lambda >= 0 with a passive-set strategy: restricted solves on the passive
// set, ratio-test steps when a multiplier would go negative (this is what
// prevents the cycling a naive drop/add scheme suffers on degenerate active
// sets), and gradient-based insertion of violated rows. Returns true and
// overwrites the solution when the refined iterate has a smaller KKT error.
bool polish(const QpProblem& p, QpSolution& sol) {
  const int n = p.n();
  const int me = p.me();
  const int mi = p.mi();

  Eigen::LLT<MatrixXd> hfac(p.H);
  if (hfac.info() != Eigen::Success) {
    MatrixXd ridge = p.H;
    ridge.diagonal().array() += 1e-12 * (1.0 + p.H.diagonal().cwiseAbs().maxCoeff());
    hfac.compute(ridge);
    if (hfac.info() != Eigen::Success) return false;
  }
  const VectorXd hig = hfac.solve(p.g);

  // Seed the passive set from the ADMM iterate.
  std::vector<char> passive(mi, 0);
  {
    const VectorXd slack = p.d - p.C * sol.x;
    const double ynorm = std::max(1.0, sol.y_ineq.cwiseAbs().maxCoeff());
    for (int i = 0; i < mi; ++i) {
      if (sol.y_ineq(i) > 1e-8 * ynorm ||
          slack(i) < 1e-7 * (1.0 + std::abs(p.d(i))))
        passive[i] = 1;
    }
  }
  VectorXd lam = sol.y_ineq.cwiseMax(0.0);
  for (int i = 0; i < mi; ++i)
    if (!passive[i]) lam(i) = 0.0;
  VectorXd nu = VectorXd::Zero(me);
  VectorXd x;

  // Restricted dual solve on equalities plus the passive rows: find
  // multipliers making those rows exactly tight at the eliminated x.
  auto restricted = [&](const std::vector<int>& rows, VectorXd* nu_hat,
                        VectorXd* lam_hat) {
    const int k = me + static_cast<int>(rows.size());
    MatrixXd At(k, n);
    VectorXd bt(k);
    if (me > 0) {
      At.topRows(me) = p.A;
      bt.head(me) = p.b;
    }
    for (size_t i = 0; i < rows.size(); ++i) {
      At.row(me + static_cast<int>(i)) = p.C.row(rows[i]);
      bt(me + static_cast<int>(i)) = p.d(rows[i]);
    }
    VectorXd w;
    if (k > 0) {
      const MatrixXd HiAt = hfac.solve(At.transpose());
      const MatrixXd G = At * HiAt;
      const VectorXd rhs = -bt - At * hig;
      const auto cod = G.completeOrthogonalDecomposition();
      w = cod.solve(rhs);
      w += cod.solve(rhs - G * w);
    } else {
      w.resize(0);
    }
    *nu_hat = w.head(me);
    *lam_hat = w.tail(static_cast<int>(rows.size()));
  };

  int budget = 3 * (me + mi) + 30;
  bool converged = false;
  while (budget-- > 0) {
    std::vector<int> rows;
    for (int i = 0; i < mi; ++i)
      if (passive[i]) rows.push_back(i);
    VectorXd nu_hat, lam_hat;
    restricted(rows, &nu_hat, &lam_hat);
    if (!nu_hat.allFinite() || !lam_hat.allFinite()) return false;

    if (lam_hat.size() == 0 || lam_hat.minCoeff() >= -1e-11) {
      nu = nu_hat;
      for (size_t i = 0; i < rows.size(); ++i)
        lam(rows[i]) = std::max(0.0, lam_hat(static_cast<int>(i)));
      VectorXd z = p.g;
      if (me > 0) z += p.A.transpose() * nu;
      if (mi > 0) z += p.C.transpose() * lam;
      x = -hfac.solve(z);

      int add = -1;
      double worst = -1e-9;
      if (mi > 0) {
        const VectorXd slack = p.d - p.C * x;
        for (int i = 0; i < mi; ++i) {
          if (!passive[i] && slack(i) < worst) {
            worst = slack(i);
            add = i;
          }
        }
      }
      if (add < 0) {
        converged = true;
        break;
      }
      passive[add] = 1;
      continue;
    }

    // Ratio test: step from the current nonnegative iterate toward the
    // restricted solution only as far as the first multiplier hitting zero.
    double alpha = 1.0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const double hat = lam_hat(static_cast<int>(i));
      if (hat < 0.0) {
        const double cur = lam(rows[i]);
        alpha = std::min(alpha, cur / std::max(cur - hat, 1e-300));
      }
    }
    for (size_t i = 0; i < rows.size(); ++i) {
      const double cur = lam(rows[i]);
      const double next = cur + alpha * (lam_hat(static_cast<int>(i)) - cur);
      lam(rows[i]) = next;
      if (next <= 1e-12) {
        lam(rows[i]) = 0.0;
        passive[rows[i]] = 0;
      }
    }
  }
  if (!converged) return false;

  QpSolution cand = sol;
  cand.x = x;
  cand.y_eq = nu;
  cand.y_ineq = lam;
  if (!cand.x.allFinite()) return false;
  if (kkt_error(p, cand.x, cand.y_eq, cand.y_ineq) <
      kkt_error(p, sol.x, sol.y_eq, sol.y_ineq)) {
    cand.primal_residual = sol.primal_residual;
    cand.dual_residual = sol.dual_residual;
    sol = cand;
    return true;
  }
  return false;
}

QpSolution solve_equality_kkt(const QpProblem& p) {
  const int n = p.n(), me = p.me();
  MatrixXd K = MatrixXd::Zero(n + me, n + me);
  K.topLeftCorner(n, n) = p.H;
  if (me > 0) {
    K.block(n, 0, me, n) = p.A;
    K.block(0, n, n, me) = p.A.transpose();
  }
  VectorXd rhs(n + me);
  rhs.head(n) = -p.g;
  if (me > 0) rhs.tail(me) = p.b;

  Eigen::PartialPivLU<MatrixXd> lu(K);
  VectorXd z = lu.solve(rhs);
  z += lu.solve(rhs - K * z);  // one refinement step

  QpSolution sol;
  sol.x = z.head(n);
  sol.y_eq = z.tail(me);
  sol.y_ineq = VectorXd::Zero(0);
  sol.iterations = 0;
  sol.primal_residual = me > 0 ? (p.A * sol.x - p.b).cwiseAbs().maxCoeff() : 0.0;
  VectorXd stat = p.H * sol.x + p.g;
  if (me > 0) stat += p.A.transpose() * sol.y_eq;
  sol.dual_residual = stat.cwiseAbs().maxCoeff();
  sol.status = (sol.x.allFinite() && sol.primal_residual < 1e-6 &&
                sol.dual_residual < 1e-6)
                   ? QpStatus::kOptimal
                   : QpStatus::kMaxIterations;
  return sol;
}

}  // namespace

QpSolution QpSolver::solve(const QpProblem& p, const QpSettings& s) {
  p.validate();
  const int n = p.n();
  const int me = p.me();
  const int mi = p.mi();
  const int m = me + mi;

  if (mi == 0) {
    QpSolution sol = solve_equality_kkt(p);
    x_ = sol.x;
    warm_valid_ = false;
    return sol;
  }

  Workspace w;
  w.H = p.H;
  w.g = p.g;
  w.M.resize(m, n);
  w.l.resize(m);
  w.u.resize(m);
  const double inf = std::numeric_limits<double>::infinity();
  if (me > 0) {
    w.M.topRows(me) = p.A;
    w.l.head(me) = p.b;
    w.u.head(me) = p.b;
  }
  w.M.bottomRows(mi) = p.C;
  w.l.tail(mi).setConstant(-inf);
  w.u.tail(mi) = p.d;

  if (s.scaling) {
    ruiz_equilibrate(w);
  } else {
    w.D = VectorXd::Ones(n);
    w.E = VectorXd::Ones(m);
  }

  double rho_bar = s.rho;
  auto set_rho = [&]() {
    w.rho.resize(m);
    for (int i = 0; i < m; ++i) w.rho(i) = i < me ? 1e3 * rho_bar : rho_bar;
  };
  set_rho();
  factorize(w, s.sigma);

  // Warm start (scaled space) when dimensions match the previous solve.
  VectorXd x, y, z;
  if (warm_valid_ && warm_n_ == n && warm_m_ == m) {
    x = x_.cwiseQuotient(w.D);
    y = y_.cwiseQuotient(w.E);
    z = w.M * x;
  } else {
    x = VectorXd::Zero(n);
    y = VectorXd::Zero(m);
    z = VectorXd::Zero(m);
  }

  QpSolution sol;
  sol.status = QpStatus::kMaxIterations;
  VectorXd y_prev_check = y;

  int iter = 0;
  while (iter < s.max_iter) {
    for (int k = 0; k < s.check_interval && iter < s.max_iter; ++k, ++iter) {
      const VectorXd rhs =
          s.sigma * x - w.g + w.M.transpose() * (w.rho.cwiseProduct(z) - y);
      const VectorXd x_tilde = w.llt.solve(rhs);
      const VectorXd z_tilde = w.M * x_tilde;
      x = s.alpha * x_tilde + (1.0 - s.alpha) * x;
      const VectorXd z_relaxed = s.alpha * z_tilde + (1.0 - s.alpha) * z;
      const VectorXd z_cand = z_relaxed + y.cwiseQuotient(w.rho);
      const VectorXd z_new = z_cand.cwiseMax(w.l).cwiseMin(w.u);
      y += w.rho.cwiseProduct(z_relaxed - z_new);
      z = z_new;
    }

    // Unscaled residual check.
    const VectorXd xu = w.D.cwiseProduct(x);
    const VectorXd yu = w.E.cwiseProduct(y);
    VectorXd mx(m);
    if (me > 0) mx.head(me) = p.A * xu;
    mx.tail(mi) = p.C * xu;
    VectorXd zu = w.E.cwiseInverse().cwiseProduct(z);
    const double r_prim = (mx - zu).cwiseAbs().maxCoeff();
    VectorXd stat = p.H * xu + p.g;
    if (me > 0) stat += p.A.transpose() * yu.head(me);
    stat += p.C.transpose() * yu.tail(mi);
    const double r_dual = stat.cwiseAbs().maxCoeff();

    const double tol_p =
        s.tol * (1.0 + std::max(mx.cwiseAbs().maxCoeff(),
                                zu.cwiseAbs().maxCoeff()));
    const double tol_d =
        s.tol * (1.0 + std::max({(p.H * xu).cwiseAbs().maxCoeff(),
                                 p.g.cwiseAbs().maxCoeff(),
                                 (stat - p.H * xu - p.g).cwiseAbs().maxCoeff()}));
    if (r_prim <= tol_p && r_dual <= tol_d) {
      sol.status = QpStatus::kOptimal;
      sol.primal_residual = r_prim;
      sol.dual_residual = r_dual;
      break;
    }

    // Primal infeasibility certificate from the multiplier drift.
    const VectorXd dy = w.E.cwiseProduct(y - y_prev_check);
    const double dy_norm = dy.cwiseAbs().maxCoeff();
    if (dy_norm > 1e-12) {
      const VectorXd dyn = dy / dy_norm;
      double support = 0.0;
      bool valid = true;
      for (int i = 0; i < me; ++i) support += p.b(i) * dyn(i);
      for (int i = 0; i < mi; ++i) {
        if (dyn(me + i) < -1e-6) valid = false;
        support += p.d(i) * std::max(dyn(me + i), 0.0);
      }
      MatrixXd Mt(m, n);
      if (me > 0) Mt.topRows(me) = p.A;
      Mt.bottomRows(mi) = p.C;
      if (valid && (Mt.transpose() * dyn).cwiseAbs().maxCoeff() < 1e-6 &&
          support < -1e-6) {
        sol.status = QpStatus::kInfeasible;
        break;
      }
    }
    y_prev_check = y;

    // Residual balancing for rho.
    const double denom_p =
        std::max({mx.cwiseAbs().maxCoeff(), zu.cwiseAbs().maxCoeff(), 1e-10});
    const double denom_d =
        std::max({(p.H * xu).cwiseAbs().maxCoeff(), p.g.cwiseAbs().maxCoeff(),
                  (stat - p.H * xu - p.g).cwiseAbs().maxCoeff(), 1e-10});
    const double ratio = (r_prim / denom_p) / std::max(r_dual / denom_d, 1e-16);
    const double rho_new =
        std::clamp(rho_bar * std::sqrt(ratio), 1e-6, 1e6);
    if (rho_new > 5.0 * rho_bar || rho_new < 0.2 * rho_bar) {
      rho_bar = rho_new;
      set_rho();
      factorize(w, s.sigma);
    }
  }

  sol.iterations = iter;
  sol.x = w.D.cwiseProduct(x);
  const VectorXd yu = w.E.cwiseProduct(y);
  sol.y_eq = yu.head(me);
  sol.y_ineq = yu.tail(mi).cwiseMax(0.0);

  if (sol.status == QpStatus::kInfeasible) {
    warm_valid_ = false;
    return sol;
  }

  sol.primal_residual =
      me > 0 ? (p.A * sol.x - p.b).cwiseAbs().maxCoeff() : 0.0;
  sol.primal_residual = std::max(
      sol.primal_residual, std::max(0.0, (p.C * sol.x - p.d).maxCoeff()));
  VectorXd stat_final = p.H * sol.x + p.g + p.C.transpose() * sol.y_ineq;
  if (me > 0) stat_final += p.A.transpose() * sol.y_eq;
  sol.dual_residual = stat_final.cwiseAbs().maxCoeff();

  if (sol.status == QpStatus::kOptimal) {
    if (s.polish) polish(p, sol);
  } else if (s.polish) {
    // Iteration budget exhausted near the solution; the active-set refinement
    // often lands exactly, in which case the result is still trustworthy.
    if (polish(p, sol) &&
        kkt_error(p, sol.x, sol.y_eq, sol.y_ineq) <= s.tol) {
      sol.status = QpStatus::kOptimal;
    }
  }

  // Keep the (unscaled) iterate for the next warm start.
  x_ = sol.x;
  y_ = yu;
  warm_n_ = n;
  warm_m_ = m;
  warm_valid_ = true;
  return sol;
}

}  // namespace dcmwalk::qp
