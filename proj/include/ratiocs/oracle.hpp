// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force ground truth on tiny instances, used to validate the solvers
// and the certificate checks.

#pragma once

#include "ratiocs/errors.hpp"
#include "ratiocs/model.hpp"
#include "ratiocs/numerics.hpp"

namespace ratiocs {

struct OracleBudget {
  uint64_t max_support_enum = 142506;  // C(30, 5)
  int kernel_grid_points = 2001;       // per kernel dimension
  int max_kernel_dim = 2;
};

// Enumerates supports by increasing cardinality (lexicographic within each
// cardinality) and returns the first exact solution of Ax = b.
SparseSignal sparsest_solution(const ProblemInstance& inst,
                               const OracleBudget& budget = {});

struct GlobalRatioResult {
  Vector x;
  double ratio = 0.0;
  double grid_resolution = 0.0;
};

// Global minimum of ||x||_1 / ||x||_2 over {Ax = b} for kernel dim <= 2,
// by dense grid search over kernel coefficients plus local refinement.
GlobalRatioResult global_ratio_min(const ProblemInstance& inst,
                                   const OracleBudget& budget = {});

}  // namespace ratiocs
