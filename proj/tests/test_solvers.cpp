// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ratiocs/errors.hpp"
#include "ratiocs/model.hpp"
#include "ratiocs/solvers.hpp"

using namespace ratiocs;

namespace {

// 3x4 instance whose kernel is span{(1,1,1,-1)}; the feasible set is
// x0 + t (1,1,1,-1) and |5+t| + 3|t| has its unique minimum at t = 0, so
// x0 = 5 e_1 is the unique l1 (and ratio) minimizer.
ProblemInstance toy_instance() {
  Matrix h(1, 4);
  h << 1, 1, 1, -1;
  ProblemInstance inst;
  inst.a = kernel_basis(h).transpose();  // 3x4, ker = span{h}
  Vector x0 = Vector::Zero(4);
  x0[0] = 5.0;
  inst.truth = SparseSignal::from_dense(x0);
  inst.b = inst.a * x0;
  return inst;
}

ProblemInstance random_instance(uint64_t seed, int m, int n, int s) {
  SeededRng rng(seed, 0);
  ProblemInstance inst;
  inst.a = gaussian_matrix(rng, m, n);
  inst.truth =
      generate_signal(rng, n, s, CoefficientDistribution::uniform_annulus(5, 10));
  inst.b = inst.a * inst.truth->values;
  return inst;
}

}  // namespace

TEST_CASE("l1 basis pursuit on the identity returns b") {
  ProblemInstance inst;
  inst.a = Matrix::Identity(3, 3);
  inst.b.resize(3);
  inst.b << 1, 0, -2;
  const SolverResult res = solve_l1_bp(inst, SolverConfig{});
  CHECK((res.x - inst.b).norm() <= 1e-6);
}

TEST_CASE("l1 basis pursuit attains the known optimal value on a line") {
  ProblemInstance inst;
  inst.a.resize(1, 2);
  inst.a << 1, 1;
  inst.b.resize(1);
  inst.b << 2;
  const SolverResult res = solve_l1_bp(inst, SolverConfig{});
  CHECK(std::abs(res.x.lpNorm<1>() - 2.0) <= 1e-5);
}

TEST_CASE("l1 basis pursuit reaches the optimal value on the wide sign row") {
  // minimizers form a face here (5 e_1 is not unique), so only the optimal
  // l1 value is asserted
  ProblemInstance inst;
  inst.a.resize(1, 4);
  inst.a << 1, 1, 1, -1;
  inst.b.resize(1);
  inst.b << 5;
  const SolverResult res = solve_l1_bp(inst, SolverConfig{});
  CHECK(std::abs(res.x.lpNorm<1>() - 5.0) <= 1e-5);
}

TEST_CASE("l1 basis pursuit recovers the toy spike") {
  const ProblemInstance inst = toy_instance();
  const SolverResult res = solve_l1_bp(inst, SolverConfig{});
  CHECK((res.x - inst.truth->values).norm() <= 1e-5);
}

TEST_CASE("ratio descent initialized at the truth stays there") {
  const ProblemInstance inst = random_instance(21, 50, 250, 6);
  const SolverResult res = solve_l1l2(inst, SolverConfig{}, inst.truth->values);
  CHECK((res.x - inst.truth->values).norm() <= 1e-5 * inst.truth->values.norm());
  const double alpha0 = inst.truth->values.lpNorm<1>() / inst.truth->values.norm();
  for (double a : res.objective_trace) CHECK(a == doctest::Approx(alpha0).epsilon(1e-5));
}

TEST_CASE("ratio descent never degrades the l1 initializer") {
  const ProblemInstance inst = toy_instance();
  const SolverResult l1 = solve_l1_bp(inst, SolverConfig{});
  const SolverResult res = solve_l1l2(inst, SolverConfig{}, l1.x);
  CHECK(l1_l2_objective(res.x) <= l1_l2_objective(l1.x) + 1e-8);
  CHECK((inst.a * res.x - inst.b).norm() <= 1e-6);
}

TEST_CASE("alpha trace stays inside [1, sqrt(n)]") {
  const ProblemInstance inst = random_instance(22, 30, 100, 5);
  const SolverResult l1 = solve_l1_bp(inst, SolverConfig{});
  const SolverResult res = solve_l1l2(inst, SolverConfig{}, l1.x);
  for (double a : res.objective_trace) {
    CHECK(a >= 1.0 - 1e-9);
    CHECK(a <= std::sqrt(100.0) + 1e-9);
  }
}

TEST_CASE("zero initializer aborts with a numerical failure") {
  const ProblemInstance inst = toy_instance();
  const SolverResult res = solve_l1l2(inst, SolverConfig{}, Vector::Zero(4));
  CHECK(res.termination == Termination::NumericalFailure);
}

TEST_CASE("admm subproblem honors a dominating proximal term") {
  const ProblemInstance inst = random_instance(23, 5, 12, 3);
  const Vector x_prev = inst.truth->values;
  const Vector x = admm_subproblem(inst.a, inst.b, Vector::Zero(12), x_prev,
                                   1e8, 20.0, std::nullopt, 1e-9, 1e-9, 5000);
  CHECK((x - x_prev).norm() <= 1e-5 * std::max(1.0, x_prev.norm()));
}

TEST_CASE("admm subproblem on the identity is forced to b") {
  Matrix a = Matrix::Identity(1, 1);
  Vector b(1);
  b << 0.3;
  const Vector x = admm_subproblem(a, b, Vector::Zero(1), Vector::Zero(1), 0.0,
                                   20.0, std::nullopt, 1e-9, 1e-9, 5000);
  CHECK(std::abs(x[0] - 0.3) <= 1e-6);
}

TEST_CASE("box bound is never violated") {
  const ProblemInstance inst = random_instance(24, 10, 40, 3);
  SolverConfig cfg;
  cfg.box_bound = 10.0;
  const SolverResult l1 = solve_l1_bp(inst, cfg);
  CHECK(l1.x.lpNorm<Eigen::Infinity>() <= 10.0 + 1e-8);
  const SolverResult res = solve_l1l2(inst, cfg, l1.x);
  CHECK(res.x.lpNorm<Eigen::Infinity>() <= 10.0 + 1e-8);
}

TEST_CASE("support selection records the argmin candidate") {
  const ProblemInstance inst = random_instance(25, 20, 60, 4);
  const SolverResult res = solve_l1l2_ss(inst, SolverConfig{}, 4);
  REQUIRE(res.candidate_ratios.size() == 4);
  REQUIRE(res.winning_index >= 0);
  double best = res.candidate_ratios[0];
  for (double r : res.candidate_ratios) best = std::min(best, r);
  int winner_pos = -1;
  for (size_t i = 0; i < res.candidate_indices.size(); ++i)
    if (res.candidate_indices[i] == res.winning_index) winner_pos = static_cast<int>(i);
  REQUIRE(winner_pos >= 0);
  CHECK(res.candidate_ratios[winner_pos] == best);
  CHECK(l1_l2_objective(res.x) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("support selection with s = 1 matches a single spike run") {
  const ProblemInstance inst = random_instance(26, 20, 60, 3);
  const SolverResult ss = solve_l1l2_ss(inst, SolverConfig{}, 1);
  // rebuild the same spike initializer
  const SolverResult l1 = solve_l1_bp(inst, SolverConfig{});
  const int idx = best_k_term(l1.x, 1).support[0];
  Vector init = Vector::Zero(60);
  init[idx] = inst.b.dot(inst.a.col(idx)) / inst.a.col(idx).squaredNorm();
  const SolverResult single = solve_l1l2(inst, SolverConfig{}, init);
  CHECK((ss.x - single.x).norm() <= 1e-10 * std::max(1.0, single.x.norm()));
}

TEST_CASE("support selection beats or ties the l1-initialized run") {
  const ProblemInstance inst = random_instance(27, 50, 250, 6);
  const SolverResult l1 = solve_l1_bp(inst, SolverConfig{});
  const SolverResult dca = solve_l1l2(inst, SolverConfig{}, l1.x);
  const SolverResult ss = solve_l1l2_ss(inst, SolverConfig{}, 6);
  CHECK(l1_l2_objective(ss.x) <= l1_l2_objective(dca.x) + 1e-6);
}

TEST_CASE("reweighted l1 recovers the toy spike") {
  const ProblemInstance inst = toy_instance();
  const SolverResult res = solve_reweighted_l1(inst, SolverConfig{});
  CHECK((res.x - inst.truth->values).norm() <= 1e-5);
}

TEST_CASE("IRLS iterates are exactly feasible and solve the identity case") {
  ProblemInstance eye;
  eye.a = Matrix::Identity(4, 4);
  eye.b.resize(4);
  eye.b << 1, -2, 0, 3;
  const SolverResult direct = solve_irls_lq(eye, SolverConfig{}, eye.b);
  CHECK((direct.x - eye.b).norm() <= 1e-8);

  const ProblemInstance toy = toy_instance();
  SolverConfig cfg;
  cfg.q = 0.5;
  const SolverResult l1 = solve_l1_bp(toy, cfg);
  const SolverResult res = solve_irls_lq(toy, cfg, l1.x);
  CHECK((res.x - toy.truth->values).norm() <= 1e-5);
  CHECK((toy.a * res.x - toy.b).norm() <= 1e-10 * std::max(1.0, toy.b.norm()));
}

TEST_CASE("l1 minus l2 solves the identity case and descends its objective") {
  ProblemInstance eye;
  eye.a = Matrix::Identity(3, 3);
  eye.b.resize(3);
  eye.b << 0, 2, 0;
  const SolverResult direct = solve_l1_minus_l2(eye, SolverConfig{});
  CHECK((direct.x - eye.b).norm() <= 1e-3);

  const ProblemInstance inst = random_instance(28, 50, 250, 8);
  const SolverResult res = solve_l1_minus_l2(inst, SolverConfig{});
  for (size_t i = 1; i < res.objective_trace.size(); ++i)
    CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-8);

  const SolverResult toy = solve_l1_minus_l2(toy_instance(), SolverConfig{});
  const Vector refit =
      refit_on_support(toy_instance(), best_k_term(toy.x, 1).support);
  CHECK((refit - toy_instance().truth->values).norm() <= 1e-6);
}

TEST_CASE("OMP picks the single active column on the identity") {
  ProblemInstance inst;
  inst.a = Matrix::Identity(4, 4);
  inst.b = Vector::Zero(4);
  inst.b[2] = 3.0;
  const SolverResult res = solve_omp(inst, SolverConfig{});
  CHECK(res.x[2] == doctest::Approx(3.0));
  CHECK((inst.a * res.x - inst.b).norm() <= 1e-10);
}

TEST_CASE("OMP with orthogonal columns finds the exact support") {
  Matrix a(4, 4);
  a << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  ProblemInstance inst;
  inst.a = a;
  Vector x0 = Vector::Zero(4);
  x0[1] = 2.0;
  x0[3] = -5.0;
  inst.truth = SparseSignal::from_dense(x0);
  inst.b = a * x0;
  const SolverResult res = solve_omp(inst, SolverConfig{});
  CHECK((res.x - x0).norm() <= 1e-8);
}

TEST_CASE("greedy methods recover easy instances at a high rate") {
  int omp_hits = 0, cosamp_hits = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const ProblemInstance inst = random_instance(100 + seed, 50, 250, 6);
    SolverConfig cfg;
    cfg.cosamp_sparsity = 6;
    if (recovery_success(solve_omp(inst, cfg).x, *inst.truth, 50)) ++omp_hits;
    if (recovery_success(solve_cosamp(inst, cfg).x, *inst.truth, 50))
      ++cosamp_hits;
  }
  CHECK(omp_hits >= 45);
  CHECK(cosamp_hits >= 45);
}

TEST_CASE("CoSaMP solves the identity case in one round") {
  ProblemInstance inst;
  inst.a = Matrix::Identity(5, 5);
  Vector x0 = Vector::Zero(5);
  x0[1] = 1.0;
  x0[4] = -2.0;
  inst.truth = SparseSignal::from_dense(x0);
  inst.b = x0;
  SolverConfig cfg;
  cfg.cosamp_sparsity = 2;
  const SolverResult res = solve_cosamp(inst, cfg);
  CHECK((res.x - x0).norm() <= 1e-10);
  CHECK(SparseSignal::from_dense(res.x).sparsity() <= 2);
}

TEST_CASE("solver config round trips through JSON") {
  SolverConfig cfg;
  cfg.beta = 0.75;
  cfg.box_bound = std::nullopt;
  cfg.q = 0.25;
  const SolverConfig back = SolverConfig::from_json_text(cfg.to_json_text());
  CHECK(back.beta == 0.75);
  CHECK_FALSE(back.box_bound.has_value());
  CHECK(back.q == 0.25);
  CHECK(back.admm_rho == cfg.admm_rho);
}

TEST_CASE("solver result JSON carries the winning index") {
  const ProblemInstance inst = random_instance(29, 20, 60, 3);
  const SolverResult res = solve_l1l2_ss(inst, SolverConfig{}, 3);
  const std::string j = res.to_json_text();
  CHECK(j.find("winning_index") != std::string::npos);
}

TEST_CASE("method registry and aliases") {
  CHECK(registered_methods().size() == 8);
  CHECK(canonical_method("l1l2+l1") == "l1l2");
  CHECK(canonical_method("l1/l2+ss") == "l1l2+ss");
  CHECK(canonical_method("L1") == "l1");
  CHECK(canonical_method("nope").empty());
}

TEST_CASE("run_method dispatch covers every registered solver") {
  const ProblemInstance inst = random_instance(30, 25, 80, 4);
  for (const auto& method : registered_methods()) {
    const SolverResult res = run_method(method, inst, SolverConfig{}, 4);
    CHECK(res.x.size() == 80);
    CHECK(res.termination != Termination::NumericalFailure);
  }
}

TEST_CASE("noisy ratio solver respects the epsilon ball") {
  SeededRng rng(31, 0);
  ProblemInstance inst;
  inst.a = gaussian_matrix(rng, 50, 250);
  inst.truth =
      generate_signal(rng, 250, 4, CoefficientDistribution::uniform_annulus(5, 10));
  inst.b = inst.a * inst.truth->values;
  Vector noise(50);
  for (int i = 0; i < 50; ++i) noise[i] = rng.normal();
  const double eps = 0.01 * inst.b.norm();
  inst.b += noise * (eps / noise.norm());
  inst.noise_level = eps;

  SolverConfig cfg;
  cfg.noise_epsilon = eps;
  const SolverResult res = run_method("l1l2", inst, cfg, 4);
  CHECK((inst.a * res.x - inst.b).norm() <= eps * (1.0 + 1e-6));
  CHECK((res.x - inst.truth->values).norm() <= 0.1 * inst.truth->values.norm());
}
