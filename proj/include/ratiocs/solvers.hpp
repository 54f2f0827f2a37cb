// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratiocs/model.hpp"

namespace ratiocs {

struct SolverConfig {
  double beta = 0.5;           // DCA quadratic regularization
  double admm_rho = 20.0;      // ADMM penalty for equality-constrained solves
  std::optional<double> box_bound = 10.0;
  int max_outer = 200;
  int max_inner = 2000;
  double tol_alpha = 1e-6;
  double tol_primal = 1e-7;
  double tol_dual = 1e-7;
  double q = 0.5;              // IRLS quasi-norm exponent, (0, 1]
  double rw_epsilon = 0.1;     // reweighted-l1 regularization
  double lasso_lambda = 0.01;  // l1-l2 penalty weight
  double l1l2_admm_rho = 100.0;
  double residual_stop = 1e-8;
  int cosamp_max_iter = 100;
  int cosamp_sparsity = 0;     // required by solve_cosamp
  int reweight_iters = 8;
  int irls_max_iter = 500;
  double noise_epsilon = 0.0;  // > 0: l1/l2 targets the eps-ball constraint

  static SolverConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

enum class Termination { Converged, MaxIters, Infeasible, NumericalFailure };

std::string to_string(Termination t);

struct SolverResult {
  Vector x;
  int outer_iters = 0;
  int inner_iters_total = 0;
  std::vector<double> objective_trace;
  Termination termination = Termination::Converged;
  double wall_time = 0.0;  // seconds
  int winning_index = -1;  // support-selection winner, -1 otherwise
  std::vector<int> candidate_indices;
  std::vector<double> candidate_ratios;
  std::string error;

  std::string to_json_text(bool include_trace = false) const;
};

// ||x||_1 / ||x||_2; throws ZeroVector.
double l1_l2_objective(const Vector& x);

// One DCA inner step: approximate minimizer of
//   ||z||_1 + <linear_term, x> + (beta/2)||x - x_prev||^2
//   over { A x = b, x = z, ||z||_inf <= box_bound }.
// A feasible x (A x = b to solve precision) is returned; primal/dual
// residuals honor tol_primal*sqrt(n) and tol_dual*sqrt(n).
Vector admm_subproblem(const Matrix& a, const Vector& b,
                       const Vector& linear_term, const Vector& x_prev,
                       double beta, double rho,
                       std::optional<double> box_bound, double tol_primal,
                       double tol_dual, int max_inner,
                       int* iters_out = nullptr);

SolverResult solve_l1_bp(const ProblemInstance& inst, const SolverConfig& cfg);
SolverResult solve_l1l2(const ProblemInstance& inst, const SolverConfig& cfg,
                        const Vector& x_init);
SolverResult solve_l1l2_ss(const ProblemInstance& inst, const SolverConfig& cfg,
                           int s);
SolverResult solve_reweighted_l1(const ProblemInstance& inst,
                                 const SolverConfig& cfg);
SolverResult solve_irls_lq(const ProblemInstance& inst, const SolverConfig& cfg,
                           const Vector& x_init);
SolverResult solve_l1_minus_l2(const ProblemInstance& inst,
                               const SolverConfig& cfg);
SolverResult solve_omp(const ProblemInstance& inst, const SolverConfig& cfg);
SolverResult solve_cosamp(const ProblemInstance& inst, const SolverConfig& cfg);

// Registered CLI/harness method names.
const std::vector<std::string>& registered_methods();
std::string canonical_method(const std::string& name);  // "" if unknown

// Dispatch by method name; s feeds support selection and CoSaMP. IRLS and
// l1/l2 without explicit init start from the min-norm / l1 solution.
SolverResult run_method(const std::string& method, const ProblemInstance& inst,
                        SolverConfig cfg, int s);

}  // namespace ratiocs
