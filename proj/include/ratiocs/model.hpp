// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ratiocs/numerics.hpp"

namespace ratiocs {

// Dense signal plus its support set; support = { i : values[i] != 0 }.
struct SparseSignal {
  Vector values;
  std::vector<int> support;  // sorted ascending

  static SparseSignal from_dense(const Vector& v);

  int n() const noexcept { return static_cast<int>(values.size()); }
  int sparsity() const noexcept { return static_cast<int>(support.size()); }
};

// Nonzero-coefficient law for synthetic signals.
struct CoefficientDistribution {
  enum class Kind { UniformSym, UniformAnnulus };
  Kind kind = Kind::UniformSym;
  double a = 0.0;   // annulus inner radius
  double b = 10.0;  // annulus outer radius, or L for uniform_sym

  static CoefficientDistribution uniform_sym(double l);
  static CoefficientDistribution uniform_annulus(double a, double b);

  double sample(SeededRng& rng) const;
  std::string name() const;
};

struct ProblemInstance {
  Matrix a;  // m x n measurement matrix
  Vector b;  // length-m observation
  std::optional<SparseSignal> truth;
  double noise_level = 0.0;

  int m() const noexcept { return static_cast<int>(a.rows()); }
  int n() const noexcept { return static_cast<int>(a.cols()); }
};

// Uniformly random s-subset support, nonzeros iid from dist (exact zeros
// resampled). Throws InvalidSparsity unless 1 <= s <= n.
SparseSignal generate_signal(SeededRng& rng, int n, int s,
                             const CoefficientDistribution& dist);

// Keeps the k largest-magnitude entries, zeros the rest; ties keep the
// lower index.
SparseSignal best_k_term(const Vector& x, int k);

// True iff supp(truth) is contained in the support of the best m-term
// approximation of x.
bool recovery_success(const Vector& x, const SparseSignal& truth, int m);

// Least-squares refit restricted to the given columns, zeros elsewhere.
Vector refit_on_support(const ProblemInstance& inst,
                        const std::vector<int>& support);

// Instance bundle: directory with A.mat, b.vec, optional truth.vec, meta.json.
struct InstanceMeta {
  int n = 0;
  int m = 0;
  int s = 0;
  double epsilon = 0.0;
  uint64_t seed = 0;
  CoefficientDistribution dist;
};

void save_instance(const std::filesystem::path& dir, const ProblemInstance& inst,
                   const InstanceMeta& meta);
ProblemInstance load_instance(const std::filesystem::path& dir,
                              InstanceMeta* meta_out = nullptr);

// Content digest shared by all per-trial records of one instance.
uint64_t instance_digest(const ProblemInstance& inst);

}  // namespace ratiocs
