// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ratiocs {

// Domain errors map to exit code 1 at the CLI boundary.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankDeficient : DomainError {
  using DomainError::DomainError;
};
struct InvalidSparsity : DomainError {
  using DomainError::DomainError;
};
struct ZeroVector : DomainError {
  using DomainError::DomainError;
};
struct EmptyKernel : DomainError {
  using DomainError::DomainError;
};
struct KernelTooLarge : DomainError {
  using DomainError::DomainError;
};
struct TrivialSignal : DomainError {
  using DomainError::DomainError;
};
struct BetaOutOfRange : DomainError {
  using DomainError::DomainError;
};
struct BudgetExceeded : DomainError {
  using DomainError::DomainError;
};
struct SingularWeightSystem : DomainError {
  using DomainError::DomainError;
};

}  // namespace ratiocs
