// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>

#include "ratiocs/errors.hpp"

namespace ratiocs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Deterministic stream-splittable random source. Identical (seed, stream)
// reproduces an identical sequence within one build; child streams are
// derived by hashing so parallel workers never share state.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed, uint64_t stream = 0);

  uint64_t seed() const noexcept { return seed_; }
  uint64_t stream() const noexcept { return stream_; }

  SeededRng child(uint64_t substream) const;

  uint64_t next_u64();
  uint64_t uniform_int(uint64_t n);     // [0, n)
  double uniform();                     // [0, 1)
  double uniform(double lo, double hi);
  double normal();                      // standard normal (Box-Muller)

 private:
  uint64_t seed_;
  uint64_t stream_;
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// 64-bit mixing used for stream derivation and digests.
uint64_t mix64(uint64_t x);
uint64_t hash_combine(uint64_t h, uint64_t v);

// m x n matrix with iid standard normal entries, row-major fill order.
Matrix gaussian_matrix(SeededRng& rng, int m, int n);

// Orthonormal basis of ker(A) as columns of an n x (n - m) matrix, computed
// from a column-pivoted QR of A^T. Throws RankDeficient when the numerical
// rank of A falls below rows(A) (tolerance 1e-10 relative).
Matrix kernel_basis(const Matrix& a);

// argmin ||Ax - b||_2 for full-column-rank A. Throws RankDeficient.
Vector least_squares(const Matrix& a, const Vector& b);

enum class FactorKind {
  QrOfTranspose,          // QR of A^T: kernel basis + min-norm solves
  KktSymmetricIndefinite, // LDLT of [[shift*I, A^T], [A, 0]]
  NormalCholesky,         // LLT of A A^T + shift*I
};

// Cached factorization reused across ADMM iterations. reconstruct() rebuilds
// the matrix that was actually factored (A itself for QR-of-transpose, the
// Gram or KKT matrix otherwise) to 1e-10 relative accuracy.
class Factorization {
 public:
  Factorization(FactorKind kind, const Matrix& a, double shift = 0.0);

  FactorKind kind() const noexcept { return kind_; }
  int source_rows() const noexcept { return rows_; }
  int source_cols() const noexcept { return cols_; }

  Matrix reconstruct() const;
  // NormalCholesky: solves (A A^T + shift I) y = rhs.
  // KktSymmetricIndefinite: solves the bordered KKT system.
  // QrOfTranspose: min-norm solution of A x = rhs.
  Vector solve(const Vector& rhs) const;
  // QrOfTranspose only.
  Matrix kernel() const;

 private:
  FactorKind kind_;
  int rows_;
  int cols_;
  double shift_;
  Eigen::ColPivHouseholderQR<Matrix> qr_;   // of A^T
  Eigen::LLT<Matrix> llt_;                  // of A A^T + shift I
  Eigen::LDLT<Matrix> ldlt_;                // of the KKT matrix
  Matrix a_;                                // kept for reconstruct/solve
};

// Text format: first line "m n", then m lines of n space-separated reals
// printed with 17 significant digits (lossless round trip for doubles).
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);
void save_matrix(const std::filesystem::path& p, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& p);

void write_vector(std::ostream& os, const Vector& v);  // one real per line
Vector read_vector(std::istream& is);
void save_vector(const std::filesystem::path& p, const Vector& v);
Vector load_vector(const std::filesystem::path& p);

// Canonical shortest-exact decimal form used by every text emitter.
std::string format_double(double v);

}  // namespace ratiocs
