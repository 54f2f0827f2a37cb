// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#include "ratiocs/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace ratiocs {

using nlohmann::json;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double soft(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// Shared state for the equality-constrained ADMM splitting
//   min ||W z||_1 + <c, x> + (beta/2)||x - x_ref||^2
//   s.t. A x = b, x = z, ||z||_inf <= box.
// The x-update is the KKT solve of the (beta+rho)-regularized system; its
// Schur complement A A^T is factored once and reused across iterations and
// outer DCA steps.
struct EqAdmm {
  const Matrix& a;
  const Vector& b;
  Eigen::LLT<Matrix> gram;  // A A^T
  int m, n;
  Vector z, u;  // warm-started splitting state

  EqAdmm(const Matrix& a_in, const Vector& b_in) : a(a_in), b(b_in) {
    m = static_cast<int>(a.rows());
    n = static_cast<int>(a.cols());
    gram.compute((a * a.transpose()).eval());
    if (gram.info() != Eigen::Success)
      throw RankDeficient("ADMM: A A^T not positive definite");
    z = Vector::Zero(n);
    u = Vector::Zero(n);
  }

  // Orthogonal projection onto {A x = b}.
  Vector project_affine(const Vector& x) const {
    return x - a.transpose() * gram.solve(a * x - b);
  }

  // Returns the feasible x iterate. weights empty means unit l1 weights.
  Vector run(const Vector& c, const Vector& x_ref, double beta, double rho,
             const Vector& weights, std::optional<double> box,
             double tol_primal, double tol_dual, int max_inner, int* iters,
             bool* converged) {
    const double rp = tol_primal * std::sqrt(static_cast<double>(n));
    const double rd = tol_dual * std::sqrt(static_cast<double>(n));
    Vector x = Vector::Zero(n);
    bool ok = false;
    int it = 0;
    for (; it < max_inner; ++it) {
      Vector v = rho * (z - u);
      if (beta != 0.0) v += beta * x_ref;
      if (c.size()) v -= c;
      const Vector lam = gram.solve(a * v - (beta + rho) * b);
      x = (v - a.transpose() * lam) / (beta + rho);

      const Vector z_old = z;
      for (int i = 0; i < n; ++i) {
        const double w = weights.size() ? weights[i] : 1.0;
        double zi = soft(x[i] + u[i], w / rho);
        if (box) zi = std::clamp(zi, -*box, *box);
        z[i] = zi;
      }
      u += x - z;

      const double sp = std::max(1.0, std::max(x.norm(), z.norm()));
      const double sd = std::max(sp, rho * u.norm());
      if ((x - z).norm() <= rp * sp && rho * (z - z_old).norm() <= rd * sd) {
        ok = true;
        ++it;
        break;
      }
    }
    if (iters) *iters = it;
    if (converged) *converged = ok;
    return x;
  }

  // Alternating projections between the box and {A x = b}; pulls the final
  // iterate inside the box without leaving the affine constraint set.
  Vector polish_box(Vector x, double box) const {
    for (int it = 0; it < 500; ++it) {
      if (x.cwiseAbs().maxCoeff() <= box + 1e-9) break;
      x = x.cwiseMax(-box).cwiseMin(box);
      x = project_affine(x);
    }
    return x;
  }
};

double safe_ratio(const Vector& x) {
  const double n2 = x.norm();
  if (n2 < 1e-300) throw ZeroVector("l1/l2 ratio of zero vector");
  return x.lpNorm<1>() / n2;
}

}  // namespace

double l1_l2_objective(const Vector& x) { return safe_ratio(x); }

Vector admm_subproblem(const Matrix& a, const Vector& b,
                       const Vector& linear_term, const Vector& x_prev,
                       double beta, double rho,
                       std::optional<double> box_bound, double tol_primal,
                       double tol_dual, int max_inner, int* iters_out) {
  EqAdmm engine(a, b);
  int iters = 0;
  bool ok = false;
  Vector x = engine.run(linear_term, x_prev, beta, rho, Vector(), box_bound,
                        tol_primal, tol_dual, max_inner, &iters, &ok);
  if (box_bound) x = engine.polish_box(x, *box_bound);
  if (iters_out) *iters_out = iters;
  return x;
}

SolverResult solve_l1_bp(const ProblemInstance& inst, const SolverConfig& cfg) {
  const double t0 = now_seconds();
  SolverResult res;
  EqAdmm engine(inst.a, inst.b);
  int iters = 0;
  bool ok = false;
  Vector x = engine.run(Vector(), Vector::Zero(inst.n()), 0.0, cfg.admm_rho,
                        Vector(), cfg.box_bound, cfg.tol_primal, cfg.tol_dual,
                        cfg.max_inner, &iters, &ok);
  if (cfg.box_bound) x = engine.polish_box(x, *cfg.box_bound);
  res.x = x;
  res.inner_iters_total = iters;
  res.outer_iters = 1;
  res.objective_trace.push_back(x.lpNorm<1>());
  res.termination = ok ? Termination::Converged : Termination::MaxIters;
  res.wall_time = now_seconds() - t0;
  return res;
}

namespace {

// Noisy-variant subproblem: quadratic penalty (1/(2 mu))||A x - b||^2 in
// place of the equality constraint. Woodbury turns the n x n solve into a
// cached m x m Cholesky backsolve.
struct PenaltyAdmm {
  const Matrix& a;
  const Vector& b;
  double mu;
  double c0;  // beta + rho
  Eigen::LLT<Matrix> llt;  // A A^T + mu*c0*I
  int m, n;
  Vector z, u;

  PenaltyAdmm(const Matrix& a_in, const Vector& b_in, double mu_in, double c0_in)
      : a(a_in), b(b_in), mu(mu_in), c0(c0_in) {
    m = static_cast<int>(a.rows());
    n = static_cast<int>(a.cols());
    Matrix g = a * a.transpose();
    g.diagonal().array() += mu * c0;
    llt.compute(g);
    z = Vector::Zero(n);
    u = Vector::Zero(n);
  }

  Vector run(const Vector& c, const Vector& x_ref, double beta, double rho,
             std::optional<double> box, double tol_primal, double tol_dual,
             int max_inner, int* iters) {
    const double rp = tol_primal * std::sqrt(static_cast<double>(n));
    const double rd = tol_dual * std::sqrt(static_cast<double>(n));
    Vector x = Vector::Zero(n);
    int it = 0;
    for (; it < max_inner; ++it) {
      Vector r = beta * x_ref + rho * (z - u) - c + a.transpose() * b / mu;
      // x = (c0 I + A^T A / mu)^{-1} r
      x = (r - a.transpose() * llt.solve(a * r)) / c0;
      const Vector z_old = z;
      for (int i = 0; i < n; ++i) {
        double zi = soft(x[i] + u[i], 1.0 / rho);
        if (box) zi = std::clamp(zi, -*box, *box);
        z[i] = zi;
      }
      u += x - z;
      const double sp = std::max(1.0, std::max(x.norm(), z.norm()));
      const double sd = std::max(sp, rho * u.norm());
      if ((x - z).norm() <= rp * sp && rho * (z - z_old).norm() <= rd * sd) {
        ++it;
        break;
      }
    }
    if (iters) *iters = it;
    return x;
  }
};

}  // namespace

SolverResult solve_l1l2(const ProblemInstance& inst, const SolverConfig& cfg,
                        const Vector& x_init) {
  const double t0 = now_seconds();
  SolverResult res;
  if (x_init.norm() < 1e-12) {
    res.termination = Termination::NumericalFailure;
    res.error = "ZeroIterate: initialization has vanishing norm";
    res.x = Vector::Zero(inst.n());
    res.wall_time = now_seconds() - t0;
    return res;
  }

  const bool noisy = cfg.noise_epsilon > 0.0;
  Vector x = x_init;
  double alpha = safe_ratio(x);
  res.objective_trace.push_back(alpha);

  if (!noisy) {
    EqAdmm engine(inst.a, inst.b);
    engine.z = x;  // warm start at the initializer
    for (int k = 0; k < cfg.max_outer; ++k) {
      const Vector c = -(alpha / x.norm()) * x;
      int iters = 0;
      bool ok = false;
      Vector x_new =
          engine.run(c, x, cfg.beta, cfg.admm_rho, Vector(), cfg.box_bound,
                     cfg.tol_primal, cfg.tol_dual, cfg.max_inner, &iters, &ok);
      res.inner_iters_total += iters;
      ++res.outer_iters;
      if (x_new.norm() < 1e-12) {
        res.termination = Termination::NumericalFailure;
        res.error = "ZeroIterate: iterate collapsed to zero";
        res.x = x;
        res.wall_time = now_seconds() - t0;
        return res;
      }
      x = x_new;
      const double alpha_new = safe_ratio(x);
      res.objective_trace.push_back(alpha_new);
      if (std::abs(alpha_new - alpha) <= cfg.tol_alpha) {
        alpha = alpha_new;
        res.termination = Termination::Converged;
        if (cfg.box_bound) x = engine.polish_box(x, *cfg.box_bound);
        res.x = x;
        res.wall_time = now_seconds() - t0;
        return res;
      }
      alpha = alpha_new;
    }
    if (cfg.box_bound) x = engine.polish_box(x, *cfg.box_bound);
    res.x = x;
    res.termination = Termination::MaxIters;
    res.wall_time = now_seconds() - t0;
    return res;
  }

  // eps-ball constrained variant via quadratic penalty, final exact
  // projection onto { ||A x - b||_2 <= eps }.
  const double eps = cfg.noise_epsilon;
  double mu = eps * eps;
  Eigen::LLT<Matrix> gram((inst.a * inst.a.transpose()).eval());
  auto project_ball = [&](Vector v) {
    const Vector r = inst.a * v - inst.b;
    const double rn = r.norm();
    if (rn > eps) v += inst.a.transpose() * gram.solve(r) * (eps / rn - 1.0);
    return v;
  };
  Vector best_x = project_ball(x);
  double best_ratio = safe_ratio(best_x);
  for (int k = 0; k < cfg.max_outer; ++k) {
    PenaltyAdmm engine(inst.a, inst.b, mu, cfg.beta + cfg.admm_rho);
    engine.z = x;
    const Vector c = -(alpha / x.norm()) * x;
    int iters = 0;
    Vector x_new = engine.run(c, x, cfg.beta, cfg.admm_rho, cfg.box_bound,
                              cfg.tol_primal, cfg.tol_dual, cfg.max_inner,
                              &iters);
    res.inner_iters_total += iters;
    ++res.outer_iters;
    if (x_new.norm() < 1e-12) {
      res.termination = Termination::NumericalFailure;
      res.error = "ZeroIterate: iterate collapsed to zero";
      res.x = best_x;
      res.wall_time = now_seconds() - t0;
      return res;
    }
    const double resid = (inst.a * x_new - inst.b).norm();
    if (resid > eps)
      mu *= 0.5;  // tighten the penalty
    else if (resid < 0.1 * eps)
      mu *= 2.0;
    x = x_new;
    const Vector feas = project_ball(x);
    const double fr = safe_ratio(feas);
    if (fr < best_ratio) {
      best_ratio = fr;
      best_x = feas;
    }
    const double alpha_new = safe_ratio(x);
    res.objective_trace.push_back(std::clamp(
        alpha_new, 1.0, std::sqrt(static_cast<double>(inst.n()))));
    if (std::abs(alpha_new - alpha) <= cfg.tol_alpha) {
      res.termination = Termination::Converged;
      res.x = best_x;
      res.wall_time = now_seconds() - t0;
      return res;
    }
    alpha = alpha_new;
  }
  res.x = best_x;
  res.termination = Termination::MaxIters;
  res.wall_time = now_seconds() - t0;
  return res;
}

SolverResult solve_l1l2_ss(const ProblemInstance& inst, const SolverConfig& cfg,
                           int s) {
  const double t0 = now_seconds();
  if (s < 1) throw InvalidSparsity("solve_l1l2_ss: s must be >= 1");
  SolverResult l1 = solve_l1_bp(inst, cfg);
  const SparseSignal detected = best_k_term(l1.x, s);

  SolverResult res;
  res.inner_iters_total = l1.inner_iters_total;
  const int nc = detected.sparsity();
  std::vector<SolverResult> cand(nc);
  std::vector<double> ratios(nc, std::numeric_limits<double>::infinity());

  // embarrassingly parallel candidate runs; selection stays order-independent
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < nc; ++t) {
    const int i = detected.support[t];
    const Vector ai = inst.a.col(i);
    const double v = inst.b.dot(ai) / ai.squaredNorm();
    Vector init = Vector::Zero(inst.n());
    init[i] = v;
    cand[t] = solve_l1l2(inst, cfg, init);
    if (cand[t].termination != Termination::NumericalFailure)
      ratios[t] = l1_l2_objective(cand[t].x);
  }

  int win = -1;
  for (int t = 0; t < nc; ++t) {
    res.inner_iters_total += cand[t].inner_iters_total;
    res.outer_iters += cand[t].outer_iters;
    res.candidate_indices.push_back(detected.support[t]);
    res.candidate_ratios.push_back(ratios[t]);
    if (std::isfinite(ratios[t]) && (win < 0 || ratios[t] < ratios[win]))
      win = t;  // ties keep the smallest candidate index
  }
  if (win < 0) {
    res.termination = Termination::NumericalFailure;
    res.error = "support selection: all candidate runs failed";
    res.x = Vector::Zero(inst.n());
    res.wall_time = now_seconds() - t0;
    return res;
  }
  res.x = cand[win].x;
  res.objective_trace = cand[win].objective_trace;
  res.termination = cand[win].termination;
  res.winning_index = detected.support[win];
  res.wall_time = now_seconds() - t0;
  return res;
}

SolverResult solve_reweighted_l1(const ProblemInstance& inst,
                                 const SolverConfig& cfg) {
  const double t0 = now_seconds();
  SolverResult res;
  EqAdmm engine(inst.a, inst.b);

  int iters = 0;
  bool ok = false;
  Vector x = engine.run(Vector(), Vector::Zero(inst.n()), 0.0, cfg.admm_rho,
                        Vector(), cfg.box_bound, cfg.tol_primal, cfg.tol_dual,
                        cfg.max_inner, &iters, &ok);
  res.inner_iters_total += iters;
  Vector w = (x.cwiseAbs().array() + cfg.rw_epsilon).inverse();
  for (int t = 0; t < cfg.reweight_iters; ++t) {
    x = engine.run(Vector(), Vector::Zero(inst.n()), 0.0, cfg.admm_rho, w,
                   cfg.box_bound, cfg.tol_primal, cfg.tol_dual, cfg.max_inner,
                   &iters, &ok);
    res.inner_iters_total += iters;
    ++res.outer_iters;
    res.objective_trace.push_back(x.lpNorm<1>());
    const Vector w_new = (x.cwiseAbs().array() + cfg.rw_epsilon).inverse();
    if ((w_new - w).lpNorm<Eigen::Infinity>() <= 1e-6) {
      w = w_new;
      break;
    }
    w = w_new;
  }
  if (cfg.box_bound) x = engine.polish_box(x, *cfg.box_bound);
  res.x = x;
  res.termination = ok ? Termination::Converged : Termination::MaxIters;
  res.wall_time = now_seconds() - t0;
  return res;
}

SolverResult solve_irls_lq(const ProblemInstance& inst, const SolverConfig& cfg,
                           const Vector& x_init) {
  const double t0 = now_seconds();
  if (!(cfg.q > 0.0 && cfg.q <= 1.0))
    throw DomainError("solve_irls_lq: q must lie in (0, 1]");
  SolverResult res;
  const double q = cfg.q;
  const int n = inst.n();
  Vector x = x_init;
  double eps = 1.0;
  double obj_prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.irls_max_iter; ++k) {
    Vector d(n);
    for (int i = 0; i < n; ++i)
      d[i] = std::pow(x[i] * x[i] + eps * eps, 1.0 - q / 2.0);
    const Matrix adat =
        inst.a * d.asDiagonal() * inst.a.transpose();
    Eigen::LLT<Matrix> llt(adat);
    if (llt.info() != Eigen::Success)
      throw SingularWeightSystem("IRLS: A D A^T numerically singular");
    const Vector x_new =
        d.asDiagonal() * (inst.a.transpose() * llt.solve(inst.b));
    double obj = 0.0;
    for (int i = 0; i < n; ++i)
      obj += std::pow(x_new[i] * x_new[i] + eps * eps, q / 2.0);
    res.objective_trace.push_back(obj);
    ++res.outer_iters;
    const double dx = (x_new - x).lpNorm<Eigen::Infinity>();
    x = x_new;
    if (obj_prev - obj < 1e-10) {
      if (eps <= 1e-8) {
        if (dx <= 1e-9 * std::max(1.0, x.lpNorm<Eigen::Infinity>())) {
          res.termination = Termination::Converged;
          res.x = x;
          res.wall_time = now_seconds() - t0;
          return res;
        }
      } else {
        eps = std::max(eps * 0.5, 1e-8);
      }
    }
    obj_prev = obj;
  }
  res.x = x;
  res.termination = Termination::MaxIters;
  res.wall_time = now_seconds() - t0;
  return res;
}

SolverResult solve_l1_minus_l2(const ProblemInstance& inst,
                               const SolverConfig& cfg) {
  const double t0 = now_seconds();
  SolverResult res;
  const int n = inst.n();
  const double lam = cfg.lasso_lambda;
  const double rho = cfg.l1l2_admm_rho;

  // cached Woodbury factor for (A^T A + rho I) solves
  Matrix g = inst.a * inst.a.transpose();
  g.diagonal().array() += rho;
  Eigen::LLT<Matrix> llt(g);
  const Vector atb = inst.a.transpose() * inst.b;

  SolverResult l1 = solve_l1_bp(inst, cfg);
  Vector x = l1.x;
  res.inner_iters_total = l1.inner_iters_total;
  res.objective_trace.push_back(x.lpNorm<1>() - x.norm());

  Vector z = x, u = Vector::Zero(n);
  const double rp = cfg.tol_primal * std::sqrt(static_cast<double>(n));
  const double rd = cfg.tol_dual * std::sqrt(static_cast<double>(n));
  for (int k = 0; k < cfg.max_outer; ++k) {
    Vector c = Vector::Zero(n);
    const double xn = x.norm();
    if (xn > 1e-12) c = -lam / xn * x;
    // inner ADMM on 0.5||Ax-b||^2 + <c,x> + lam||z||_1, x = z, |z| <= box
    Vector x_in = x;
    for (int it = 0; it < cfg.max_inner; ++it) {
      const Vector r = atb - c + rho * (z - u);
      x_in = (r - inst.a.transpose() * llt.solve(inst.a * r)) / rho;
      const Vector z_old = z;
      for (int i = 0; i < n; ++i) {
        double zi = soft(x_in[i] + u[i], lam / rho);
        if (cfg.box_bound) zi = std::clamp(zi, -*cfg.box_bound, *cfg.box_bound);
        z[i] = zi;
      }
      u += x_in - z;
      ++res.inner_iters_total;
      const double sp = std::max(1.0, std::max(x_in.norm(), z.norm()));
      const double sd = std::max(sp, rho * u.norm());
      if ((x_in - z).norm() <= rp * sp && rho * (z - z_old).norm() <= rd * sd)
        break;
    }
    ++res.outer_iters;
    const double step = (x_in - x).norm();
    x = x_in;
    res.objective_trace.push_back(x.lpNorm<1>() - x.norm());
    const double outer_tol = std::max(1e-6, 10.0 * cfg.tol_primal);
    if (step <= outer_tol * std::max(1.0, x.norm())) {
      res.termination = Termination::Converged;
      res.x = x;
      res.wall_time = now_seconds() - t0;
      return res;
    }
  }
  res.x = x;
  res.termination = Termination::MaxIters;
  res.wall_time = now_seconds() - t0;
  return res;
}

SolverResult solve_omp(const ProblemInstance& inst, const SolverConfig& cfg) {
  const double t0 = now_seconds();
  SolverResult res;
  const int m = inst.m(), n = inst.n();
  Vector col_norms(n);
  for (int j = 0; j < n; ++j)
    col_norms[j] = std::max(inst.a.col(j).norm(), 1e-300);
  Vector r = inst.b;
  std::vector<int> support;
  std::vector<char> in_support(n, 0);
  Vector coef;
  while (r.norm() > cfg.residual_stop &&
         static_cast<int>(support.size()) < m) {
    int best = -1;
    double best_corr = -1.0;
    for (int j = 0; j < n; ++j) {
      if (in_support[j]) continue;
      const double corr = std::abs(inst.a.col(j).dot(r)) / col_norms[j];
      if (corr > best_corr) {
        best_corr = corr;
        best = j;
      }
    }
    if (best < 0) break;
    support.push_back(best);
    in_support[best] = 1;
    Matrix sub(m, static_cast<int>(support.size()));
    for (size_t j = 0; j < support.size(); ++j)
      sub.col(static_cast<int>(j)) = inst.a.col(support[j]);
    coef = Eigen::ColPivHouseholderQR<Matrix>(sub).solve(inst.b);
    r = inst.b - sub * coef;
    ++res.outer_iters;
    res.objective_trace.push_back(r.norm());
  }
  res.x = Vector::Zero(n);
  for (size_t j = 0; j < support.size(); ++j)
    res.x[support[j]] = coef.size() ? coef[static_cast<int>(j)] : 0.0;
  res.termination = r.norm() <= cfg.residual_stop ? Termination::Converged
                                                  : Termination::MaxIters;
  res.wall_time = now_seconds() - t0;
  return res;
}

SolverResult solve_cosamp(const ProblemInstance& inst, const SolverConfig& cfg) {
  const double t0 = now_seconds();
  const int s = cfg.cosamp_sparsity;
  if (s < 1) throw InvalidSparsity("solve_cosamp: cosamp_sparsity required");
  SolverResult res;
  const int m = inst.m(), n = inst.n();
  Vector r = inst.b;
  std::vector<int> support;
  Vector x = Vector::Zero(n);

  auto top_indices = [](const Vector& v, int k) {
    std::vector<int> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
      return std::abs(v[i]) > std::abs(v[j]);
    });
    order.resize(std::min<int>(k, static_cast<int>(order.size())));
    return order;
  };

  for (int it = 0; it < cfg.cosamp_max_iter; ++it) {
    const Vector proxy = inst.a.transpose() * r;
    std::vector<int> omega = top_indices(proxy, 2 * s);
    omega.insert(omega.end(), support.begin(), support.end());
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());

    Matrix sub(m, static_cast<int>(omega.size()));
    for (size_t j = 0; j < omega.size(); ++j)
      sub.col(static_cast<int>(j)) = inst.a.col(omega[j]);
    const Vector coef = Eigen::ColPivHouseholderQR<Matrix>(sub).solve(inst.b);
    Vector full = Vector::Zero(n);
    for (size_t j = 0; j < omega.size(); ++j)
      full[omega[j]] = coef[static_cast<int>(j)];

    std::vector<int> pruned = top_indices(full, s);
    std::sort(pruned.begin(), pruned.end());
    x = Vector::Zero(n);
    {
      Matrix subp(m, static_cast<int>(pruned.size()));
      for (size_t j = 0; j < pruned.size(); ++j)
        subp.col(static_cast<int>(j)) = inst.a.col(pruned[j]);
      const Vector cp = Eigen::ColPivHouseholderQR<Matrix>(subp).solve(inst.b);
      for (size_t j = 0; j < pruned.size(); ++j)
        x[pruned[j]] = cp[static_cast<int>(j)];
    }
    r = inst.b - inst.a * x;
    ++res.outer_iters;
    res.objective_trace.push_back(r.norm());
    if (r.norm() <= cfg.residual_stop) {
      res.x = x;
      res.termination = Termination::Converged;
      res.wall_time = now_seconds() - t0;
      return res;
    }
    if (pruned == support) break;  // stalled support, no further progress
    support = std::move(pruned);
  }
  res.x = x;
  res.termination = Termination::MaxIters;
  res.wall_time = now_seconds() - t0;
  return res;
}

const std::vector<std::string>& registered_methods() {
  static const std::vector<std::string> methods = {
      "l1", "l1l2", "l1l2+ss", "rwl1", "irls-lq", "l1-l2", "omp", "cosamp"};
  return methods;
}

std::string canonical_method(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(c));
  if (s == "l1") return "l1";
  if (s == "l1l2" || s == "l1l2+l1" || s == "l1/l2" || s == "l1/l2+l1")
    return "l1l2";
  if (s == "l1l2+ss" || s == "l1/l2+ss") return "l1l2+ss";
  if (s == "rwl1" || s == "rwl1+l1") return "rwl1";
  if (s == "irls-lq" || s == "irls" || s == "lq") return "irls-lq";
  if (s == "l1-l2" || s == "l1-l2+l1") return "l1-l2";
  if (s == "omp") return "omp";
  if (s == "cosamp") return "cosamp";
  return "";
}

SolverResult run_method(const std::string& method, const ProblemInstance& inst,
                        SolverConfig cfg, int s) {
  const std::string name = canonical_method(method);
  if (name.empty()) throw DomainError("unknown method: " + method);
  const double t0 = now_seconds();
  SolverResult res;
  try {
    if (name == "l1") {
      res = solve_l1_bp(inst, cfg);
    } else if (name == "l1l2") {
      const SolverResult l1 = solve_l1_bp(inst, cfg);
      res = solve_l1l2(inst, cfg, l1.x);
      res.inner_iters_total += l1.inner_iters_total;
    } else if (name == "l1l2+ss") {
      res = solve_l1l2_ss(inst, cfg, std::max(1, s));
    } else if (name == "rwl1") {
      res = solve_reweighted_l1(inst, cfg);
    } else if (name == "irls-lq") {
      Eigen::LLT<Matrix> gram((inst.a * inst.a.transpose()).eval());
      const Vector min_norm = inst.a.transpose() * gram.solve(inst.b);
      res = solve_irls_lq(inst, cfg, min_norm);
    } else if (name == "l1-l2") {
      res = solve_l1_minus_l2(inst, cfg);
    } else if (name == "omp") {
      res = solve_omp(inst, cfg);
    } else {  // cosamp
      if (cfg.cosamp_sparsity < 1) cfg.cosamp_sparsity = std::max(1, s);
      res = solve_cosamp(inst, cfg);
    }
  } catch (const DomainError& e) {
    res.x = Vector::Zero(inst.n());
    res.termination = Termination::NumericalFailure;
    res.error = e.what();
  }
  res.wall_time = now_seconds() - t0;
  return res;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIters: return "max_iters";
    case Termination::Infeasible: return "infeasible";
    case Termination::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

SolverConfig SolverConfig::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  SolverConfig c;
  c.beta = j.value("beta", c.beta);
  c.admm_rho = j.value("admm_rho", c.admm_rho);
  if (j.contains("box_bound")) {
    if (j["box_bound"].is_null())
      c.box_bound.reset();
    else
      c.box_bound = j["box_bound"].get<double>();
  }
  c.max_outer = j.value("max_outer", c.max_outer);
  c.max_inner = j.value("max_inner", c.max_inner);
  c.tol_alpha = j.value("tol_alpha", c.tol_alpha);
  c.tol_primal = j.value("tol_primal", c.tol_primal);
  c.tol_dual = j.value("tol_dual", c.tol_dual);
  c.q = j.value("q", c.q);
  c.rw_epsilon = j.value("rw_epsilon", c.rw_epsilon);
  c.lasso_lambda = j.value("lasso_lambda", c.lasso_lambda);
  c.l1l2_admm_rho = j.value("l1l2_admm_rho", c.l1l2_admm_rho);
  c.residual_stop = j.value("residual_stop", c.residual_stop);
  c.cosamp_max_iter = j.value("cosamp_max_iter", c.cosamp_max_iter);
  c.cosamp_sparsity = j.value("cosamp_sparsity", c.cosamp_sparsity);
  c.reweight_iters = j.value("reweight_iters", c.reweight_iters);
  c.irls_max_iter = j.value("irls_max_iter", c.irls_max_iter);
  c.noise_epsilon = j.value("noise_epsilon", c.noise_epsilon);
  if (!(c.tol_alpha > 0 && c.tol_primal > 0 && c.tol_dual > 0))
    throw DomainError("SolverConfig: tolerances must be positive");
  if (!(c.q > 0 && c.q <= 1)) throw DomainError("SolverConfig: q in (0,1]");
  if (c.box_bound && !(*c.box_bound > 0))
    throw DomainError("SolverConfig: box_bound must be positive");
  return c;
}

std::string SolverConfig::to_json_text() const {
  json j{{"beta", beta},
         {"admm_rho", admm_rho},
         {"box_bound", box_bound ? json(*box_bound) : json(nullptr)},
         {"max_outer", max_outer},
         {"max_inner", max_inner},
         {"tol_alpha", tol_alpha},
         {"tol_primal", tol_primal},
         {"tol_dual", tol_dual},
         {"q", q},
         {"rw_epsilon", rw_epsilon},
         {"lasso_lambda", lasso_lambda},
         {"l1l2_admm_rho", l1l2_admm_rho},
         {"residual_stop", residual_stop},
         {"cosamp_max_iter", cosamp_max_iter},
         {"cosamp_sparsity", cosamp_sparsity},
         {"reweight_iters", reweight_iters},
         {"irls_max_iter", irls_max_iter},
         {"noise_epsilon", noise_epsilon}};
  return j.dump(2);
}

std::string SolverResult::to_json_text(bool include_trace) const {
  json j{{"outer_iters", outer_iters},
         {"inner_iters_total", inner_iters_total},
         {"termination", to_string(termination)},
         {"wall_time", wall_time}};
  j["x"] = std::vector<double>(x.data(), x.data() + x.size());
  if (include_trace) j["objective_trace"] = objective_trace;
  if (winning_index >= 0) {
    j["winning_index"] = winning_index;
    j["candidate_indices"] = candidate_indices;
    j["candidate_ratios"] = candidate_ratios;
  }
  if (!error.empty()) j["error"] = error;
  return j.dump(2);
}

}  // namespace ratiocs
