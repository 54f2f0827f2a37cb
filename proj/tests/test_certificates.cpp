// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ratiocs/certificates.hpp"
#include "ratiocs/errors.hpp"
#include "ratiocs/model.hpp"

using namespace ratiocs;

namespace {

// 3x4 matrix with ker(A) = span{(1,1,1,-1)}.
Matrix dim1_kernel_matrix() {
  Matrix h(1, 4);
  h << 1, 1, 1, -1;
  return kernel_basis(h).transpose();
}

Vector make_vec(std::initializer_list<double> vals) {
  Vector v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("ratio, dynamic range and kappa on hand-checked inputs") {
  CHECK(l1_l2_ratio(make_vec({3, 4})) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(l1_l2_ratio(make_vec({0, 7, 0})) == doctest::Approx(1.0));
  CHECK(l1_l2_ratio(make_vec({2, 2, 2, 2})) == doctest::Approx(2.0));

  CHECK(dynamic_range(make_vec({10, -5, 0})) == doctest::Approx(0.5));
  CHECK(dynamic_range(make_vec({3, -3})) == doctest::Approx(1.0));
  CHECK(dynamic_range(make_vec({2, -8})) == doctest::Approx(0.25));

  CHECK(kappa(make_vec({0, 1, 0})) == doctest::Approx(1.0));
  CHECK(kappa(make_vec({1, 1, 0})) == doctest::Approx(1.0));
  // s = 4 maximizer: x1^2 = 1/2 + 1/(2 sqrt(s)), remaining mass split evenly
  const double x1 = std::sqrt(0.75);
  const double rest = std::sqrt((1.0 - 0.75) / 3.0);
  CHECK(kappa(make_vec({x1, rest, rest, rest})) ==
        doctest::Approx(1.5).epsilon(1e-12));

  CHECK_THROWS_AS(l1_l2_ratio(Vector::Zero(3)), ZeroVector);
  CHECK_THROWS_AS(dynamic_range(Vector::Zero(3)), ZeroVector);
  CHECK_THROWS_AS(kappa(Vector::Zero(3)), ZeroVector);
}

TEST_CASE("quantities are scale and permutation invariant") {
  SeededRng rng(1, 0);
  for (int t = 0; t < 50; ++t) {
    Vector x(6);
    for (int i = 0; i < 6; ++i) x[i] = rng.normal();
    Vector perm(6);
    for (int i = 0; i < 6; ++i) perm[i] = x[(i + 2) % 6];
    CHECK(l1_l2_ratio(3.7 * x) == doctest::Approx(l1_l2_ratio(x)).epsilon(1e-12));
    CHECK(kappa(-0.2 * x) == doctest::Approx(kappa(x)).epsilon(1e-12));
    CHECK(kappa(perm) == doctest::Approx(kappa(x)).epsilon(1e-12));
    CHECK(dynamic_range(perm) == doctest::Approx(dynamic_range(x)).epsilon(1e-12));
  }
}

TEST_CASE("kappa and ratio bounds hold on random sparse vectors") {
  SeededRng rng(2, 0);
  for (int s : {2, 4, 8, 16, 32}) {
    const double bound = (std::sqrt(static_cast<double>(s)) + 1.0) / 2.0;
    for (int t = 0; t < 2000; ++t) {
      Vector x = Vector::Zero(s);
      for (int i = 0; i < s; ++i) x[i] = rng.normal();
      const double k = kappa(x);
      CHECK(k >= 1.0 - 1e-12);
      CHECK(k <= bound + 1e-12);
      const double r = l1_l2_ratio(x);
      CHECK(r >= 1.0 - 1e-12);
      CHECK(r <= std::sqrt(static_cast<double>(s)) + 1e-12);
    }
  }
}

TEST_CASE("kernel ratio minimization on the wide sign row") {
  Matrix a(1, 4);
  a << 1, 1, 1, -1;
  SeededRng rng(3, 0);
  const KernelRatioEstimate est = kernel_ratio_minimize(a, 1.0, 10, rng);
  // h = (1,1,1,-1) lies in the kernel and evaluates to 2
  CHECK(est.min_ratio_upper_bound <= 2.0 + 1e-9);
  CHECK(est.min_ratio_upper_bound >= 1.0 - 1e-9);
  CHECK((a * est.argmin_h).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(est.c_of_a_lower_bound ==
        doctest::Approx(1.0 / (est.min_ratio_upper_bound *
                               est.min_ratio_upper_bound)));
}

TEST_CASE("kernel ratio on a dim-1 kernel is exact regardless of restarts") {
  const Matrix a = dim1_kernel_matrix();
  const Vector h = make_vec({1, 1, 1, -1});
  const double expect = h.lpNorm<1>() / h.norm();  // = 2
  SeededRng r1(4, 0), r2(4, 0);
  const KernelRatioEstimate e1 = kernel_ratio_minimize(a, 1.0, 1, r1);
  const KernelRatioEstimate e2 = kernel_ratio_minimize(a, 1.0, 7, r2);
  CHECK(e1.min_ratio_upper_bound == doctest::Approx(expect).epsilon(1e-9));
  CHECK(e2.min_ratio_upper_bound == doctest::Approx(expect).epsilon(1e-9));
  CHECK(min_kernel_ratio_exact(a, 1.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("more restarts never increase the kernel ratio estimate") {
  SeededRng rng(5, 0);
  const Matrix a = gaussian_matrix(rng, 3, 8);
  SeededRng r1(6, 0), r2(6, 0);
  const double few = kernel_ratio_minimize(a, 1.0, 3, r1).min_ratio_upper_bound;
  const double many = kernel_ratio_minimize(a, 1.0, 12, r2).min_ratio_upper_bound;
  CHECK(many <= few + 1e-15);
  CHECK(few >= 1.0);
  CHECK(few <= std::sqrt(8.0) + 1e-9);
}

TEST_CASE("exact dim-2 minimization agrees with sampling from above") {
  SeededRng rng(7, 0);
  const Matrix a = gaussian_matrix(rng, 4, 6);  // kernel dim 2
  SeededRng r(8, 0);
  const double sampled = kernel_ratio_minimize(a, 1.0, 20, r).min_ratio_upper_bound;
  const double exact = min_kernel_ratio_exact(a, 1.0);
  CHECK(exact <= sampled + 1e-9);
  CHECK(sampled <= exact + 1e-3);
}

TEST_CASE("uniform recovery condition verdicts") {
  const Matrix a = dim1_kernel_matrix();
  SeededRng rng(9, 0);
  const KernelRatioEstimate est = kernel_ratio_minimize(a, 1.0, 5, rng);
  // estimate 2 <= threshold 3 at s=1: falsified with witness
  const CertificateReport rep = check_uniform_recovery_condition(a, 1, 1.0, est);
  CHECK(rep.verdict == Verdict::Falsified);
  CHECK(rep.witness.has_value());
  CHECK(rep.quantities.at("threshold") == doctest::Approx(3.0));

  // a large estimate cannot certify the infimum: inconclusive
  KernelRatioEstimate big = est;
  big.min_ratio_upper_bound = 13.0;
  CHECK(check_uniform_recovery_condition(a, 4, 1.0, big).verdict ==
        Verdict::Inconclusive);

  // q = 1/2, s = 1: threshold 3^2 * 1 = 9
  KernelRatioEstimate half = est;
  half.q = 0.5;
  const CertificateReport rep2 =
      check_uniform_recovery_condition(a, 1, 0.5, half);
  CHECK(rep2.quantities.at("threshold") == doctest::Approx(9.0));
}

TEST_CASE("exact NSP check on the dim-1 kernel") {
  const Matrix a = dim1_kernel_matrix();
  // s=1, c=1: worst singleton gives 1 < 3: holds
  CHECK(check_nsp_exact(a, 1, 1.0, 1.0).verdict == Verdict::Holds);
  // s=2, c=1: 2 < 2 is false (strict inequality): fails with witness
  const CertificateReport rep = check_nsp_exact(a, 2, 1.0, 1.0);
  CHECK(rep.verdict == Verdict::Fails);
  CHECK(rep.witness.has_value());
  // s=0 vacuous
  CHECK(check_nsp_exact(a, 0, 1.0, 1.0).verdict == Verdict::Holds);
}

TEST_CASE("exact NSP matches enumeration on random dim-1 kernels") {
  SeededRng rng(10, 0);
  for (int t = 0; t < 20; ++t) {
    const int n = 5 + static_cast<int>(rng.uniform_int(6));
    const Matrix a = gaussian_matrix(rng, n - 1, n);
    Matrix basis;
    try {
      basis = kernel_basis(a);
    } catch (const RankDeficient&) {
      continue;
    }
    const Vector h = basis.col(0);
    for (int s = 1; s <= 3; ++s) {
      for (double c : {0.3, 1.0 / (std::sqrt(double(s)) + 2.0), 1.0}) {
        // enumeration oracle: strict inequality over all supports of size <= s
        std::vector<double> mags(n);
        for (int i = 0; i < n; ++i) mags[i] = std::abs(h[i]);
        std::sort(mags.begin(), mags.end(), std::greater<>());
        const double total = h.lpNorm<1>();
        bool holds = true;
        double top = 0.0;
        for (int k = 0; k < s; ++k) {
          top += mags[k];
          if (!(top < c * (total - top))) holds = false;
        }
        const CertificateReport rep = check_nsp_exact(a, s, c, 1.0);
        CHECK((rep.verdict == Verdict::Holds) == holds);
      }
    }
  }
}

TEST_CASE("NSP falsification finds explicit witnesses") {
  // ker contains e1 - e2
  Matrix span(1, 4);
  span << 1, -1, 0, 0;
  Matrix h2(2, 4);
  h2 << 1, -1, 0, 0, 0, 0, 1, 1;
  const Matrix a = kernel_basis(h2).transpose();  // 2x4, kernel dim 2
  SeededRng rng(11, 0);
  const CertificateReport rep = check_nsp_falsify(a, 1, 0.5, 1.0, rng, 200);
  CHECK(rep.verdict == Verdict::Falsified);
  CHECK(rep.witness.has_value());

  SeededRng rng2(12, 0);
  // enormous c makes the inequality nearly always true: inconclusive
  CHECK(check_nsp_falsify(a, 1, 100.0, 1.0, rng2, 50).verdict ==
        Verdict::Inconclusive);
  SeededRng rng3(13, 0);
  CHECK(check_nsp_falsify(a, 1, 0.5, 1.0, rng3, 0).verdict ==
        Verdict::Inconclusive);
}

TEST_CASE("local optimality check on the closed-form dim-1 example") {
  const Matrix a = dim1_kernel_matrix();
  const Vector x0 = make_vec({5, 5, 0, 0});
  const CertificateReport rep = check_local_optimality(x0, a, true);
  CHECK(rep.quantities.at("rho") == doctest::Approx(1.0));
  CHECK(rep.quantities.at("kappa") == doctest::Approx(1.0));
  CHECK(rep.quantities.at("c") == doctest::Approx(0.25).epsilon(1e-9));
  // Eq-range condition holds with equality (2 <= 2) but NSP(2, 1/3) fails
  CHECK(rep.quantities.at("cond11_lhs") == doctest::Approx(2.0));
  CHECK(rep.quantities.at("cond11_rhs") == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.verdict == Verdict::Fails);
  CHECK(rep.quantities.at("delta") == doctest::Approx(5.0));
}

TEST_CASE("local optimality rejects trivial signals and needs an estimate") {
  const Matrix a = dim1_kernel_matrix();
  CHECK_THROWS_AS(check_local_optimality(make_vec({1, 0, 0, 0}), a, true),
                  TrivialSignal);
  CHECK_THROWS_AS(check_local_optimality(make_vec({1, 2, 0, 0}), a, false),
                  DomainError);
}

TEST_CASE("sampled local optimality can falsify but never certify") {
  // the wide sign row has a dim-3 kernel containing spiky vectors, so the
  // sampled ratio bound gives c >= 1/2 and the range condition caps at 1
  Matrix wide(1, 4);
  wide << 1, 1, 1, -1;
  SeededRng rng(14, 0);
  const KernelRatioEstimate est = kernel_ratio_minimize(wide, 1.0, 10, rng);
  const Vector flat = make_vec({5, 5, 0, 0});  // rho (kappa+1) = 2 > 1
  CHECK(check_local_optimality(flat, wide, false, &est).verdict ==
        Verdict::Falsified);

  const Matrix a = dim1_kernel_matrix();  // exact c = 1/4, cap = 2
  SeededRng rng2(15, 0);
  const KernelRatioEstimate est2 = kernel_ratio_minimize(a, 1.0, 5, rng2);
  const Vector ok = make_vec({5, 4, 0, 0});  // rho (kappa+1) ~ 1.68 < 2
  CHECK(check_local_optimality(ok, a, false, &est2).verdict ==
        Verdict::Inconclusive);
}

TEST_CASE("robustness dichotomy handles the trivial and parallel cases") {
  const Matrix a = dim1_kernel_matrix();
  // orthogonal to the kernel direction, so a parallel move has no kernel
  // component and beta = 0
  const Vector x0 = make_vec({5, -5, 0, 0});
  CHECK(check_robustness_dichotomy(x0, x0, a, 0.5).verdict == Verdict::Holds);

  const double alpha = 0.5;
  const Vector parallel = (1.0 + alpha / 2.0) * x0;
  const CertificateReport rep =
      check_robustness_dichotomy(x0, parallel, a, alpha);
  CHECK(rep.verdict == Verdict::Holds);
  CHECK(rep.quantities.at("cond16a") == 1.0);
  CHECK(rep.quantities.at("cond16b") == 1.0);
}

TEST_CASE("robustness dichotomy validates alpha and beta") {
  const Matrix a = dim1_kernel_matrix();
  const Vector x0 = make_vec({5, 5, 0, 0});
  // kernel direction has beta = 4 sqrt(2s) ||u||2/||u||1 = 4*2*2/4 = 4 >= 1
  const Vector moved = x0 + make_vec({1, 1, 1, -1});
  CHECK_THROWS_AS(check_robustness_dichotomy(x0, moved, a, 0.9),
                  BetaOutOfRange);
  CHECK_THROWS_AS(check_robustness_dichotomy(x0, Vector::Zero(4), a, 0.5),
                  ZeroVector);
}

TEST_CASE("gaussian width estimates respect the log bound") {
  SeededRng rng(15, 0);
  SeededRng r10 = rng.child(10), r100 = rng.child(100), r2 = rng.child(2);
  const WidthEstimate w10 = gaussian_width_l1ball(10, 4000, r10);
  const WidthEstimate w100 = gaussian_width_l1ball(100, 4000, r100);
  CHECK(w10.estimate <= std::sqrt(8.0 * std::log(10.0)) + 3.0 * w10.stderr_);
  CHECK(w100.estimate <= std::sqrt(8.0 * std::log(100.0)) + 3.0 * w100.stderr_);
  // monotone in n with shared seed, 3-stderr slack
  CHECK(w10.estimate <= w100.estimate + 3.0 * (w10.stderr_ + w100.stderr_));

  // n=2 has the closed value 2/sqrt(pi)
  const WidthEstimate w2 = gaussian_width_l1ball(2, 20000, r2);
  CHECK(std::abs(w2.estimate - 2.0 / std::sqrt(M_PI)) <= 3.0 * w2.stderr_);
}

TEST_CASE("gaussian width is deterministic and parallel-invariant") {
  SeededRng a(16, 0), b(16, 0);
  const WidthEstimate serial = gaussian_width_l1ball(50, 5000, a, 1);
  const WidthEstimate parallel = gaussian_width_l1ball(50, 5000, b, 4);
  CHECK(serial.estimate == parallel.estimate);
  CHECK(serial.stderr_ == parallel.stderr_);
}

TEST_CASE("l1 error bound experiment in the exact-recovery regime") {
  SeededRng rng(17, 0);
  const L1ErrorBoundReport rep = l1_error_bound_experiment(rng, 50, 250, 4, 5);
  CHECK(rep.mean_rel_error >= 0.0);
  CHECK(rep.mean_rel_error <= 1e-5);
  CHECK(rep.bound_ok);
}

TEST_CASE("kappa concentration stays bounded and above the floor") {
  SeededRng rng(18, 0);
  const KappaConcentrationReport rep =
      kappa_concentration_experiment(rng, {2, 4, 16, 64}, 2000);
  CHECK(rep.bounded);
  for (double q : rep.quantile99) CHECK(q > 0.0);
  // s=2: kappa <= (sqrt(2)+1)/2 always
  SeededRng rng2(19, 0);
  for (int t = 0; t < 2000; ++t) {
    Vector x(2);
    x << rng2.normal(), rng2.normal();
    if (x[0] == 0.0 || x[1] == 0.0) continue;
    CHECK(kappa(x) <= (std::sqrt(2.0) + 1.0) / 2.0 + 1e-12);
    CHECK(kappa(x) >= 1.0 - 1e-12);
  }
}

TEST_CASE("subgaussian sample bound arithmetic") {
  CHECK(subgaussian_sample_bound(2, 1, std::exp(1.0), 1, 1, 1).satisfied);
  CHECK_FALSE(subgaussian_sample_bound(1, 1, std::exp(1.0), 1, 1, 1).satisfied);
  CHECK(subgaussian_sample_bound(2.0, 1, std::exp(1.0), 1, 1, 1).slack ==
        doctest::Approx(1.0));
}

TEST_CASE("certificate reports serialize with witnesses") {
  const Matrix a = dim1_kernel_matrix();
  const CertificateReport rep = check_nsp_exact(a, 2, 1.0, 1.0);
  const std::string j = rep.to_json_text();
  CHECK(j.find("\"verdict\": \"fails\"") != std::string::npos);
  CHECK(j.find("witness") != std::string::npos);
}
