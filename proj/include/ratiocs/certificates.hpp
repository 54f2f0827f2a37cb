// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratiocs/model.hpp"

namespace ratiocs {

enum class Verdict { Holds, Fails, Falsified, Inconclusive };
std::string to_string(Verdict v);

struct CertificateReport {
  std::string condition;
  uint64_t inputs_digest = 0;
  std::map<std::string, double> quantities;
  Verdict verdict = Verdict::Inconclusive;
  std::string notes;
  std::optional<Vector> witness;
  std::optional<double> grid_resolution;
  std::optional<uint64_t> seed;

  std::string to_json_text() const;
};

// Scale- and permutation-invariant quantities of a nonzero vector.
double l1_l2_ratio(const Vector& x);   // ||x||_1 / ||x||_2, in [1, sqrt(s)]
double dynamic_range(const Vector& x); // min_supp |x_i| / ||x||_inf, in (0,1]
double kappa(const Vector& x);         // ||x||_1 ||x||_inf / ||x||_2^2

struct KernelRatioEstimate {
  double min_ratio_upper_bound = 0.0;  // best found ||h||_q / ||h||_2
  double q = 1.0;
  Vector argmin_h;
  int restarts = 0;
  double c_of_a_lower_bound = 0.0;  // 1 / min_ratio^2 when q = 1
};

// Multistart local minimization of ||N c||_q / ||N c||_2 over unit-norm
// coefficients (N = kernel basis). The returned value is an upper bound on
// the infimum; deterministic given the rng state, and monotone improving in
// the restart count.
KernelRatioEstimate kernel_ratio_minimize(const Matrix& a, double q,
                                          int restarts, SeededRng& rng);

// Exact minimum of ||h||_q / ||h||_2 over ker(A), kernel dimension <= 2
// (dense angular grid + golden-section refinement).
double min_kernel_ratio_exact(const Matrix& a, double q,
                              int grid_points = 100000);

CertificateReport check_uniform_recovery_condition(
    const Matrix& a, int s, double q, const KernelRatioEstimate& est);

// Exact (s,c)-NSP in l_q on kernels of dimension <= 2; n <= 30.
CertificateReport check_nsp_exact(const Matrix& a, int s, double c, double q,
                                  int grid_points = 100000);

// Sampling falsifier: each sampled kernel vector is tested against its
// worst index set (the s largest magnitudes).
CertificateReport check_nsp_falsify(const Matrix& a, int s, double c, double q,
                                    SeededRng& rng, int samples);

CertificateReport check_local_optimality(
    const Vector& x0, const Matrix& a, bool exact_mode,
    const KernelRatioEstimate* est = nullptr);

CertificateReport check_robustness_dichotomy(const Vector& x0,
                                             const Vector& x_star,
                                             const Matrix& a, double alpha);

struct WidthEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
};

// Monte-Carlo estimate of E max_i |g_i| (Gaussian width of the l1 ball up to
// polar identification), with standard error.
WidthEstimate gaussian_width_l1ball(int n, int samples, SeededRng& rng,
                                    int parallelism = 1);

struct L1ErrorBoundReport {
  double mean_rel_error = 0.0;
  double theory_scale = 0.0;  // sqrt(s log n / m)
  double ratio = 0.0;
  bool bound_ok = true;       // ratio <= bound_constant, skipped when s == m
  bool asserted = true;
  int trials = 0;
};

L1ErrorBoundReport l1_error_bound_experiment(SeededRng& rng, int m, int n,
                                             int s, int trials,
                                             double bound_constant = 8.0);

struct KappaConcentrationReport {
  std::vector<int> s_list;
  std::vector<double> quantile99;  // of kappa / sqrt(log s)
  bool bounded = true;             // max <= factor * value at smallest s
  double factor = 2.0;
};

KappaConcentrationReport kappa_concentration_experiment(
    SeededRng& rng, const std::vector<int>& s_list, int trials,
    double factor = 2.0, int parallelism = 1);

struct SampleBoundResult {
  bool satisfied = false;
  double slack = 0.0;  // m/s - D F^4 u log n
};

SampleBoundResult subgaussian_sample_bound(double m, double s, double n,
                                           double f, double u, double d);

}  // namespace ratiocs
