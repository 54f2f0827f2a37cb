// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#include "ratiocs/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "json.hpp"
#include "ratiocs/solvers.hpp"

namespace ratiocs {

using nlohmann::json;

namespace {

uint64_t digest_doubles(uint64_t h, const double* p, size_t count) {
  for (size_t i = 0; i < count; ++i) {
    uint64_t bits;
    std::memcpy(&bits, &p[i], sizeof(bits));
    h = hash_combine(h, bits);
  }
  return h;
}

uint64_t digest_matrix(const Matrix& a) {
  uint64_t h = hash_combine(0x9e3779b97f4a7c15ULL,
                            (static_cast<uint64_t>(a.rows()) << 32) ^
                                static_cast<uint64_t>(a.cols()));
  return digest_doubles(h, a.data(), static_cast<size_t>(a.size()));
}

// q-quasi-norm of a unit-2-norm vector; with ||h||_2 = 1 this is the ratio.
double qnorm(const Vector& h, double q) {
  double acc = 0.0;
  for (int i = 0; i < h.size(); ++i) acc += std::pow(std::abs(h[i]), q);
  return std::pow(acc, 1.0 / q);
}

// (s, c)-NSP margin for a single kernel vector against its worst index set:
// max_T ||h_T||_q^q - c ||h_{T^c}||_q^q, attained at the s largest entries.
double nsp_margin(const Vector& h, int s, double c, double q) {
  std::vector<double> pw(h.size());
  for (int i = 0; i < h.size(); ++i) pw[i] = std::pow(std::abs(h[i]), q);
  std::sort(pw.begin(), pw.end(), std::greater<>());
  const double total = std::accumulate(pw.begin(), pw.end(), 0.0);
  double lhs = 0.0;
  for (int i = 0; i < std::min<int>(s, static_cast<int>(pw.size())); ++i)
    lhs += pw[i];
  return lhs - c * (total - lhs);
}

double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi, int iters = 80) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
  double f1 = f(c1), f2 = f(c2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - phi * (b - a);
      f1 = f(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + phi * (b - a);
      f2 = f(c2);
    }
  }
  return f1 < f2 ? c1 : c2;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Falsified: return "falsified";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

double l1_l2_ratio(const Vector& x) {
  const double n2 = x.norm();
  if (n2 == 0.0) throw ZeroVector("l1_l2_ratio: zero vector");
  return x.lpNorm<1>() / n2;
}

double dynamic_range(const Vector& x) {
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double v = std::abs(x[i]);
    if (v == 0.0) continue;
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  if (mx == 0.0) throw ZeroVector("dynamic_range: zero vector");
  return mn / mx;
}

double kappa(const Vector& x) {
  const double n2 = x.squaredNorm();
  if (n2 == 0.0) throw ZeroVector("kappa: zero vector");
  return x.lpNorm<1>() * x.lpNorm<Eigen::Infinity>() / n2;
}

KernelRatioEstimate kernel_ratio_minimize(const Matrix& a, double q,
                                          int restarts, SeededRng& rng) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("q must lie in (0, 1]");
  const Matrix basis = kernel_basis(a);
  const int d = static_cast<int>(basis.cols());
  if (d == 0) throw EmptyKernel("kernel_ratio_minimize: trivial kernel");

  KernelRatioEstimate est;
  est.q = q;
  est.restarts = restarts;
  est.min_ratio_upper_bound = std::numeric_limits<double>::infinity();

  // gradient descent on the coefficient sphere; the basis is orthonormal so
  // ||N c||_2 = 1 and the objective reduces to the smoothed q-quasi-norm
  auto smoothed = [&](const Vector& h, double eps, Vector* grad_h) {
    double acc = 0.0;
    for (int i = 0; i < h.size(); ++i)
      acc += std::pow(h[i] * h[i] + eps * eps, q / 2.0);
    const double val = std::pow(acc, 1.0 / q);
    if (grad_h) {
      grad_h->resize(h.size());
      const double scale = std::pow(val, 1.0 - q);
      for (int i = 0; i < h.size(); ++i)
        (*grad_h)[i] =
            scale * std::pow(h[i] * h[i] + eps * eps, q / 2.0 - 1.0) * h[i];
    }
    return val;
  };

  for (int r = 0; r < restarts; ++r) {
    Vector c(d);
    for (int i = 0; i < d; ++i) c[i] = rng.normal();
    c.normalize();
    for (const double eps : {1e-2, 1e-4, 1e-6, 1e-9}) {
      for (int step = 0; step < 200; ++step) {
        const Vector h = basis * c;
        Vector gh;
        const double f0 = smoothed(h, eps, &gh);
        Vector g = basis.transpose() * gh;
        g -= g.dot(c) * c;  // tangent projection
        const double gn = g.norm();
        if (gn < 1e-13) break;
        double t = 1.0 / std::max(1.0, gn);
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
          Vector cn = (c - t * g).normalized();
          const double f1 = smoothed(basis * cn, eps, nullptr);
          if (f1 < f0 - 1e-4 * t * gn * gn) {
            c = cn;
            accepted = true;
            break;
          }
          t *= 0.5;
        }
        if (!accepted) break;
      }
    }
    const Vector h = basis * c;
    const double val = qnorm(h, q);
    if (val < est.min_ratio_upper_bound) {
      est.min_ratio_upper_bound = val;
      est.argmin_h = h;
    }
  }
  est.c_of_a_lower_bound =
      1.0 / (est.min_ratio_upper_bound * est.min_ratio_upper_bound);
  return est;
}

double min_kernel_ratio_exact(const Matrix& a, double q, int grid_points) {
  const Matrix basis = kernel_basis(a);
  const int d = static_cast<int>(basis.cols());
  if (d == 0) throw EmptyKernel("min_kernel_ratio_exact: trivial kernel");
  if (d > 2) throw KernelTooLarge("min_kernel_ratio_exact: kernel dim > 2");
  if (d == 1) return qnorm(basis.col(0), q);

  auto f = [&](double theta) {
    const Vector h =
        std::cos(theta) * basis.col(0) + std::sin(theta) * basis.col(1);
    return qnorm(h, q);
  };
  double best_theta = 0.0, best = std::numeric_limits<double>::infinity();
  const double step = std::numbers::pi / grid_points;
  for (int i = 0; i < grid_points; ++i) {
    const double v = f(i * step);
    if (v < best) {
      best = v;
      best_theta = i * step;
    }
  }
  const double refined =
      golden_minimize(f, best_theta - 2.0 * step, best_theta + 2.0 * step);
  return std::min(best, f(refined));
}

CertificateReport check_uniform_recovery_condition(
    const Matrix& a, int s, double q, const KernelRatioEstimate& est) {
  CertificateReport rep;
  rep.condition = "Thm5-uniform";
  rep.inputs_digest = hash_combine(digest_matrix(a),
                                   hash_combine(static_cast<uint64_t>(s),
                                                static_cast<uint64_t>(q * 1e9)));
  const double threshold =
      std::pow(3.0, 1.0 / q) * std::pow(static_cast<double>(s), 1.0 / q - 0.5);
  rep.quantities["threshold"] = threshold;
  rep.quantities["estimate"] = est.min_ratio_upper_bound;
  rep.quantities["s"] = s;
  rep.quantities["q"] = q;
  if (est.min_ratio_upper_bound <= threshold) {
    rep.verdict = Verdict::Falsified;
    rep.witness = est.argmin_h;
    rep.notes = "kernel vector with ratio below the recovery threshold";
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.notes = "sampled upper bound cannot certify an infimum";
  }
  return rep;
}

CertificateReport check_nsp_exact(const Matrix& a, int s, double c, double q,
                                  int grid_points) {
  if (a.cols() > 30) throw DomainError("check_nsp_exact: n <= 30 required");
  CertificateReport rep;
  rep.condition = "NSP-exact";
  rep.inputs_digest = hash_combine(digest_matrix(a),
                                   hash_combine(static_cast<uint64_t>(s),
                                                static_cast<uint64_t>(c * 1e9)));
  rep.quantities["s"] = s;
  rep.quantities["c"] = c;
  rep.quantities["q"] = q;
  if (s == 0) {
    rep.verdict = Verdict::Holds;
    rep.notes = "vacuous for s = 0";
    return rep;
  }
  const Matrix basis = kernel_basis(a);
  const int d = static_cast<int>(basis.cols());
  if (d > 2) throw KernelTooLarge("check_nsp_exact: kernel dim > 2");
  if (d == 0) {
    rep.verdict = Verdict::Holds;
    rep.notes = "trivial kernel";
    return rep;
  }

  if (d == 1) {
    const Vector h = basis.col(0);
    const double margin = nsp_margin(h, s, c, q);
    rep.quantities["worst_margin"] = margin;
    rep.verdict = margin < 0.0 ? Verdict::Holds : Verdict::Fails;
    if (rep.verdict == Verdict::Fails) rep.witness = h;
    return rep;
  }

  auto h_at = [&](double theta) {
    return Vector(std::cos(theta) * basis.col(0) +
                  std::sin(theta) * basis.col(1));
  };
  auto margin_at = [&](double theta) { return nsp_margin(h_at(theta), s, c, q); };
  const double step = std::numbers::pi / grid_points;
  double worst = -std::numeric_limits<double>::infinity(), worst_theta = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double mgn = margin_at(i * step);
    if (mgn > worst) {
      worst = mgn;
      worst_theta = i * step;
    }
  }
  const double refined = golden_minimize(
      [&](double t) { return -margin_at(t); }, worst_theta - 2.0 * step,
      worst_theta + 2.0 * step);
  if (margin_at(refined) > worst) {
    worst = margin_at(refined);
    worst_theta = refined;
  }
  rep.quantities["worst_margin"] = worst;
  rep.grid_resolution = step;
  rep.verdict = worst < 0.0 ? Verdict::Holds : Verdict::Fails;
  if (rep.verdict == Verdict::Fails) rep.witness = h_at(worst_theta);
  rep.notes = "dim-2 kernel checked on angular grid + refinement";
  return rep;
}

CertificateReport check_nsp_falsify(const Matrix& a, int s, double c, double q,
                                    SeededRng& rng, int samples) {
  CertificateReport rep;
  rep.condition = "NSP-falsify";
  rep.inputs_digest = hash_combine(digest_matrix(a),
                                   hash_combine(static_cast<uint64_t>(s),
                                                static_cast<uint64_t>(c * 1e9)));
  rep.seed = rng.seed();
  rep.quantities["s"] = s;
  rep.quantities["c"] = c;
  rep.quantities["q"] = q;
  rep.quantities["samples"] = samples;
  Matrix basis;
  try {
    basis = kernel_basis(a);
  } catch (const RankDeficient&) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes = "rank-deficient matrix, no kernel basis";
    return rep;
  }
  const int d = static_cast<int>(basis.cols());
  if (d == 0 || samples <= 0 || s == 0) {
    rep.verdict = Verdict::Inconclusive;
    rep.notes = "nothing to sample";
    return rep;
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < samples; ++t) {
    Vector coeff(d);
    for (int i = 0; i < d; ++i) coeff[i] = rng.normal();
    const Vector h = (basis * coeff).normalized();
    const double mgn = nsp_margin(h, s, c, q);
    worst = std::max(worst, mgn);
    if (mgn >= 0.0) {
      rep.verdict = Verdict::Falsified;
      rep.witness = h;
      rep.quantities["worst_margin"] = mgn;
      rep.notes = "sampled kernel vector violates the NSP inequality";
      return rep;
    }
  }
  rep.quantities["worst_margin"] = worst;
  rep.verdict = Verdict::Inconclusive;
  rep.notes = "no violation among samples; NSP not certified";
  return rep;
}

CertificateReport check_local_optimality(const Vector& x0, const Matrix& a,
                                         bool exact_mode,
                                         const KernelRatioEstimate* est) {
  const SparseSignal sig = SparseSignal::from_dense(x0);
  const int s = sig.sparsity();
  if (s <= 1)
    throw TrivialSignal("check_local_optimality: requires sparsity > 1");

  CertificateReport rep;
  rep.condition = "Thm3-local-optimality";
  rep.inputs_digest =
      digest_doubles(digest_matrix(a), x0.data(), static_cast<size_t>(x0.size()));
  const double rho = dynamic_range(x0);
  const double kap = kappa(x0);
  rep.quantities["rho"] = rho;
  rep.quantities["kappa"] = kap;
  rep.quantities["s"] = s;
  rep.quantities["delta"] = rho * x0.lpNorm<Eigen::Infinity>();
  const double nsp_c = 1.0 / (2.0 * kap + 1.0);
  rep.quantities["nsp_c"] = nsp_c;

  if (exact_mode) {
    const double min_ratio = min_kernel_ratio_exact(a, 1.0);
    const double c_exact = 1.0 / (min_ratio * min_ratio);
    rep.quantities["c"] = c_exact;
    const bool cond11 = rho * (kap + 1.0) <= 1.0 / (2.0 * c_exact);
    rep.quantities["cond11_lhs"] = rho * (kap + 1.0);
    rep.quantities["cond11_rhs"] = 1.0 / (2.0 * c_exact);
    const CertificateReport nsp = check_nsp_exact(a, s, nsp_c, 1.0);
    const bool cond12 = nsp.verdict == Verdict::Holds;
    rep.quantities["nsp_margin"] = nsp.quantities.count("worst_margin")
                                       ? nsp.quantities.at("worst_margin")
                                       : 0.0;
    if (cond11 && cond12) {
      rep.verdict = Verdict::Holds;
      rep.notes = "both conditions verified in exact mode";
      return rep;
    }
    // uniform fallback: NSP(s, 1/(sqrt(s)+2)) covers all s-sparse signals
    if (s > 6) {
      const CertificateReport uni =
          check_nsp_exact(a, s, 1.0 / (std::sqrt(static_cast<double>(s)) + 2.0),
                          1.0);
      if (uni.verdict == Verdict::Holds) {
        rep.verdict = Verdict::Holds;
        rep.quantities["uniform_fallback"] = 1.0;
        rep.notes = "uniform NSP condition covers all s-sparse signals";
        return rep;
      }
    }
    rep.verdict = Verdict::Fails;
    rep.notes = cond11 ? "NSP condition fails" : "dynamic-range condition fails";
    if (!cond12 && nsp.witness) rep.witness = nsp.witness;
    return rep;
  }

  if (!est)
    throw DomainError("check_local_optimality: sampled mode needs an estimate");
  const double c_lb = est->c_of_a_lower_bound;
  rep.quantities["c_lower_bound"] = c_lb;
  rep.quantities["cond11_lhs"] = rho * (kap + 1.0);
  rep.quantities["cond11_rhs_upper"] = 1.0 / (2.0 * c_lb);
  if (rho * (kap + 1.0) > 1.0 / (2.0 * c_lb)) {
    rep.verdict = Verdict::Falsified;
    rep.witness = est->argmin_h;
    rep.notes = "sampled kernel vector already falsifies the range condition";
    return rep;
  }
  rep.verdict = Verdict::Inconclusive;
  rep.notes = "c(A) is a supremum; sampling cannot certify the condition";
  return rep;
}

CertificateReport check_robustness_dichotomy(const Vector& x0,
                                             const Vector& x_star,
                                             const Matrix& a, double alpha) {
  CertificateReport rep;
  rep.condition = "Thm7-robustness";
  rep.inputs_digest =
      digest_doubles(digest_matrix(a), x0.data(), static_cast<size_t>(x0.size()));
  if (x_star.norm() == 0.0)
    throw ZeroVector("check_robustness_dichotomy: x* is zero");
  const int s = SparseSignal::from_dense(x0).sparsity();
  rep.quantities["s"] = s;
  rep.quantities["alpha"] = alpha;

  const Vector diff = x_star - x0;
  if (diff.norm() <= 1e-15 * std::max(1.0, x0.norm())) {
    rep.verdict = Verdict::Holds;
    rep.notes = "ZeroDifference: x* coincides with x0";
    rep.quantities["beta"] = 0.0;
    return rep;
  }

  const Matrix basis = kernel_basis(a);
  const Vector u = basis * (basis.transpose() * diff);
  const Vector w = diff - u;
  double beta = 0.0;
  if (u.norm() > 1e-14 * diff.norm())
    beta = 4.0 * std::sqrt(2.0 * s) * u.norm() / u.lpNorm<1>();
  rep.quantities["beta"] = beta;
  if (beta >= 1.0)
    throw BetaOutOfRange("check_robustness_dichotomy: beta >= 1");
  if (!(alpha > beta && alpha < 1.0))
    throw BetaOutOfRange("check_robustness_dichotomy: alpha not in (beta, 1)");

  const bool cond1 =
      x0.dot(x_star) >= (1.0 - alpha * alpha / 2.0) * x0.norm() * x_star.norm();
  const bool cond2 =
      x0.norm() <= x_star.norm() && x_star.norm() <= (1.0 + alpha) * x0.norm();
  rep.quantities["cond16a"] = cond1 ? 1.0 : 0.0;
  rep.quantities["cond16b"] = cond2 ? 1.0 : 0.0;

  constexpr double kSlack = 1e-9;
  if (cond1 && cond2) {
    const double lhs = diff.norm();
    const double rhs = 2.0 * std::sqrt(alpha) * x0.norm();
    rep.quantities["bound_lhs"] = lhs;
    rep.quantities["bound_rhs"] = rhs;
    rep.verdict = lhs <= rhs + kSlack ? Verdict::Holds : Verdict::Fails;
    rep.notes = "near-parallel branch (Eq. 17-style bound)";
    return rep;
  }
  const double factor = (2.0 * alpha - beta) / (alpha - beta);
  const bool p1 = diff.lpNorm<1>() <= factor * w.lpNorm<1>() + kSlack;
  const bool p2 = diff.norm() <= factor * w.norm() + kSlack;
  rep.quantities["factor"] = factor;
  rep.quantities["lhs_p1"] = diff.lpNorm<1>();
  rep.quantities["rhs_p1"] = factor * w.lpNorm<1>();
  rep.quantities["lhs_p2"] = diff.norm();
  rep.quantities["rhs_p2"] = factor * w.norm();
  rep.verdict = (p1 || p2) ? Verdict::Holds : Verdict::Fails;
  rep.notes = "violated-conditions branch; bound must hold for p=1 or p=2";
  return rep;
}

WidthEstimate gaussian_width_l1ball(int n, int samples, SeededRng& rng,
                                    int parallelism) {
  if (n < 2 || samples < 1)
    throw DomainError("gaussian_width_l1ball: need n >= 2, samples >= 1");
  constexpr int kChunk = 1024;
  const int chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks, 0.0), sqsums(chunks, 0.0);

#pragma omp parallel for schedule(dynamic) if (parallelism > 1)
  for (int c = 0; c < chunks; ++c) {
    SeededRng local = rng.child(static_cast<uint64_t>(c));
    const int count = std::min(kChunk, samples - c * kChunk);
    double s1 = 0.0, s2 = 0.0;
    for (int t = 0; t < count; ++t) {
      double mx = 0.0;
      for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(local.normal()));
      s1 += mx;
      s2 += mx * mx;
    }
    sums[c] = s1;
    sqsums[c] = s2;
  }
  const double total = std::accumulate(sums.begin(), sums.end(), 0.0);
  const double total_sq = std::accumulate(sqsums.begin(), sqsums.end(), 0.0);
  WidthEstimate est;
  est.samples = samples;
  est.estimate = total / samples;
  const double var =
      std::max(0.0, total_sq / samples - est.estimate * est.estimate);
  est.stderr_ = std::sqrt(var / samples);
  return est;
}

L1ErrorBoundReport l1_error_bound_experiment(SeededRng& rng, int m, int n,
                                             int s, int trials,
                                             double bound_constant) {
  if (!(s <= m && m <= n))
    throw DomainError("l1_error_bound_experiment: need s <= m <= n");
  L1ErrorBoundReport rep;
  rep.trials = trials;
  SolverConfig cfg;
  const auto dist = CoefficientDistribution::uniform_sym(10.0);
  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    SeededRng local = rng.child(static_cast<uint64_t>(t));
    ProblemInstance inst;
    inst.a = gaussian_matrix(local, m, n);
    inst.truth = generate_signal(local, n, s, dist);
    inst.b = inst.a * inst.truth->values;
    const SolverResult res = solve_l1_bp(inst, cfg);
    acc += (res.x - inst.truth->values).norm() / inst.truth->values.norm();
  }
  rep.mean_rel_error = acc / trials;
  rep.theory_scale = std::sqrt(static_cast<double>(s) * std::log(n) / m);
  rep.ratio = rep.mean_rel_error / rep.theory_scale;
  rep.asserted = s < m;
  rep.bound_ok = !rep.asserted || rep.ratio <= bound_constant;
  return rep;
}

KappaConcentrationReport kappa_concentration_experiment(
    SeededRng& rng, const std::vector<int>& s_list, int trials, double factor,
    int parallelism) {
  KappaConcentrationReport rep;
  rep.s_list = s_list;
  rep.factor = factor;
  rep.quantile99.resize(s_list.size());

#pragma omp parallel for schedule(dynamic) if (parallelism > 1)
  for (int si = 0; si < static_cast<int>(s_list.size()); ++si) {
    const int s = s_list[si];
    if (s < 2) throw DomainError("kappa_concentration: each s >= 2");
    SeededRng local = rng.child(static_cast<uint64_t>(si));
    std::vector<double> vals(trials);
    for (int t = 0; t < trials; ++t) {
      Vector x = Vector::Zero(s);  // kappa is permutation-invariant
      for (int i = 0; i < s; ++i) {
        double v = local.normal();
        while (v == 0.0) v = local.normal();
        x[i] = v;
      }
      vals[t] = kappa(x) / std::sqrt(std::log(static_cast<double>(s)));
    }
    std::sort(vals.begin(), vals.end());
    const double pos = 0.99 * (trials - 1);
    const int lo = static_cast<int>(pos);
    const double frac = pos - lo;
    rep.quantile99[si] =
        lo + 1 < trials ? vals[lo] * (1.0 - frac) + vals[lo + 1] * frac
                        : vals[lo];
  }
  const double base = rep.quantile99.front();
  const double mx = *std::max_element(rep.quantile99.begin(), rep.quantile99.end());
  rep.bounded = mx <= factor * base;
  return rep;
}

SampleBoundResult subgaussian_sample_bound(double m, double s, double n,
                                           double f, double u, double d) {
  if (!(m > 0 && s > 0 && n > 0 && f > 0 && u > 0 && d > 0))
    throw DomainError("subgaussian_sample_bound: all inputs must be positive");
  SampleBoundResult r;
  r.slack = m / s - d * f * f * f * f * u * std::log(n);
  r.satisfied = r.slack > 0.0;
  return r;
}

std::string CertificateReport::to_json_text() const {
  json j{{"condition", condition},
         {"verdict", to_string(verdict)},
         {"inputs_digest", inputs_digest},
         {"quantities", quantities},
         {"notes", notes}};
  if (witness)
    j["witness"] =
        std::vector<double>(witness->data(), witness->data() + witness->size());
  if (grid_resolution) j["grid_resolution"] = *grid_resolution;
  if (seed) j["seed"] = *seed;
  return j.dump(2);
}

}  // namespace ratiocs
