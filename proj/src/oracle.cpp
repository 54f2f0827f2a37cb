// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#include "ratiocs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace ratiocs {

namespace {

// Visits all k-subsets of {0,...,n-1} in lexicographic order.
template <typename F>
bool for_each_combination(int n, int k, F&& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (visit(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double golden_min_1d(const std::function<double(double)>& f, double lo,
                     double hi, double* arg) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
  double f1 = f(c1), f2 = f(c2);
  for (int i = 0; i < 100; ++i) {
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
  *arg = f1 < f2 ? c1 : c2;
  return std::min(f1, f2);
}

}  // namespace

SparseSignal sparsest_solution(const ProblemInstance& inst,
                               const OracleBudget& budget) {
  const int n = inst.n();
  if (n > 30) throw DomainError("sparsest_solution: n <= 30 required");
  const double tol = 1e-9 * std::max(1.0, inst.b.norm());
  if (inst.b.norm() <= tol) {
    SparseSignal z;
    z.values = Vector::Zero(n);
    return z;
  }

  uint64_t enumerated = 0;
  const int kmax = std::min<int>(n, inst.m());
  for (int k = 1; k <= kmax; ++k) {
    SparseSignal found;
    const bool hit = for_each_combination(n, k, [&](const std::vector<int>& t) {
      if (++enumerated > budget.max_support_enum)
        throw BudgetExceeded("sparsest_solution: support enumeration budget");
      Matrix sub(inst.m(), k);
      for (int j = 0; j < k; ++j) sub.col(j) = inst.a.col(t[j]);
      Vector coef;
      try {
        coef = least_squares(sub, inst.b);
      } catch (const RankDeficient&) {
        return false;
      }
      if ((sub * coef - inst.b).norm() > tol) return false;
      found.values = Vector::Zero(n);
      for (int j = 0; j < k; ++j) found.values[t[j]] = coef[j];
      found.support = t;
      return true;
    });
    if (hit) return found;
  }
  throw BudgetExceeded("sparsest_solution: no exact solution within budget");
}

GlobalRatioResult global_ratio_min(const ProblemInstance& inst,
                                   const OracleBudget& budget) {
  const Matrix basis = kernel_basis(inst.a);
  const int d = static_cast<int>(basis.cols());
  if (d > budget.max_kernel_dim)
    throw KernelTooLarge("global_ratio_min: kernel dim over budget");

  // min-norm particular solution
  const Vector xp = inst.a.transpose() *
                    (inst.a * inst.a.transpose()).llt().solve(inst.b);
  auto ratio_of = [](const Vector& x) {
    const double n2 = x.norm();
    return n2 == 0.0 ? std::numeric_limits<double>::infinity()
                     : x.lpNorm<1>() / n2;
  };

  GlobalRatioResult res;
  if (d == 0) {
    res.x = xp;
    res.ratio = ratio_of(xp);
    return res;
  }

  const double radius = 10.0 * std::max(1.0, xp.norm());
  auto x_at = [&](const Vector& c) { return Vector(xp + basis * c); };

  if (d == 1) {
    const int pts = budget.kernel_grid_points;
    const double step = 2.0 * radius / (pts - 1);
    res.grid_resolution = step;
    double best_t = 0.0, best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < pts; ++i) {
      const double t = -radius + i * step;
      const double v = ratio_of(x_at(Vector::Constant(1, t)));
      if (v < best) {
        best = v;
        best_t = t;
      }
    }
    double refined_t;
    const double refined =
        golden_min_1d([&](double t) { return ratio_of(x_at(Vector::Constant(1, t))); },
                      best_t - 2.0 * step, best_t + 2.0 * step, &refined_t);
    if (refined < best) {
      best = refined;
      best_t = refined_t;
    }
    res.x = x_at(Vector::Constant(1, best_t));
    res.ratio = best;
    return res;
  }

  // dim 2: coarser grid per axis, then coordinate-wise refinement cycles
  const int pts = std::min(budget.kernel_grid_points, 401);
  const double step = 2.0 * radius / (pts - 1);
  res.grid_resolution = step;
  Vector best_c(2);
  double best = std::numeric_limits<double>::infinity();
  Vector c(2);
  for (int i = 0; i < pts; ++i) {
    c[0] = -radius + i * step;
    for (int j = 0; j < pts; ++j) {
      c[1] = -radius + j * step;
      const double v = ratio_of(x_at(c));
      if (v < best) {
        best = v;
        best_c = c;
      }
    }
  }
  // seed the refinement with the sparsest solution when it is feasible; the
  // global minimizer often sits exactly at a sparse point the grid straddles
  try {
    const SparseSignal sp = sparsest_solution(inst, budget);
    if (sp.values.size() == inst.n() &&
        (inst.a * sp.values - inst.b).norm() <=
            1e-8 * std::max(1.0, inst.b.norm())) {
      const Vector cs = basis.transpose() * (sp.values - xp);
      const double v = ratio_of(x_at(cs));
      if (v < best) {
        best = v;
        best_c = cs;
      }
    }
  } catch (const DomainError&) {
  }
  double bracket = 2.0 * step;
  for (int cycle = 0; cycle < 8; ++cycle) {
    for (int axis = 0; axis < 2; ++axis) {
      Vector probe = best_c;
      double arg;
      const double v = golden_min_1d(
          [&](double t) {
            probe[axis] = t;
            return ratio_of(x_at(probe));
          },
          best_c[axis] - bracket, best_c[axis] + bracket, &arg);
      if (v < best) {
        best = v;
        best_c[axis] = arg;
      }
    }
    bracket *= 0.5;
  }
  res.x = x_at(best_c);
  res.ratio = best;
  return res;
}

}  // namespace ratiocs
