// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#include "ratiocs/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace ratiocs {

uint64_t mix64(uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t hash_combine(uint64_t h, uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

SeededRng::SeededRng(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream), eng_(mix64(mix64(seed) ^ mix64(~stream))) {}

SeededRng SeededRng::child(uint64_t substream) const {
  return SeededRng(seed_, hash_combine(stream_, substream));
}

uint64_t SeededRng::next_u64() { return eng_(); }

uint64_t SeededRng::uniform_int(uint64_t n) {
  // rejection sampling, no modulo bias
  const uint64_t limit = n * (UINT64_MAX / n);
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double SeededRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Matrix gaussian_matrix(SeededRng& rng, int m, int n) {
  Matrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  return a;
}

namespace {

int numerical_rank(const Eigen::ColPivHouseholderQR<Matrix>& qr) {
  const auto& r = qr.matrixR();
  const int k = static_cast<int>(std::min(r.rows(), r.cols()));
  if (k == 0) return 0;
  const double top = std::abs(r(0, 0));
  if (top == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < k; ++i)
    if (std::abs(r(i, i)) > 1e-10 * top) ++rank;
  return rank;
}

}  // namespace

Matrix kernel_basis(const Matrix& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Eigen::ColPivHouseholderQR<Matrix> qr(a.transpose());
  if (numerical_rank(qr) < m)
    throw RankDeficient("kernel_basis: numerical rank below row count");
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - m);
}

Vector least_squares(const Matrix& a, const Vector& b) {
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  if (numerical_rank(qr) < a.cols())
    throw RankDeficient("least_squares: rank-deficient column space");
  return qr.solve(b);
}

Factorization::Factorization(FactorKind kind, const Matrix& a, double shift)
    : kind_(kind),
      rows_(static_cast<int>(a.rows())),
      cols_(static_cast<int>(a.cols())),
      shift_(shift),
      a_(a) {
  switch (kind_) {
    case FactorKind::QrOfTranspose:
      qr_.compute(a.transpose());
      if (numerical_rank(qr_) < rows_)
        throw RankDeficient("Factorization: rank-deficient rows");
      break;
    case FactorKind::NormalCholesky: {
      Matrix g = a * a.transpose();
      g.diagonal().array() += shift_;
      llt_.compute(g);
      if (llt_.info() != Eigen::Success)
        throw RankDeficient("Factorization: Gram matrix not positive definite");
      break;
    }
    case FactorKind::KktSymmetricIndefinite: {
      const int n = cols_, m = rows_;
      Matrix kkt = Matrix::Zero(n + m, n + m);
      kkt.topLeftCorner(n, n) = shift_ * Matrix::Identity(n, n);
      kkt.topRightCorner(n, m) = a.transpose();
      kkt.bottomLeftCorner(m, n) = a;
      ldlt_.compute(kkt);
      if (ldlt_.info() != Eigen::Success)
        throw RankDeficient("Factorization: KKT factorization failed");
      break;
    }
  }
}

Matrix Factorization::reconstruct() const {
  switch (kind_) {
    case FactorKind::QrOfTranspose: {
      const Matrix q = qr_.householderQ() * Matrix::Identity(cols_, cols_);
      Matrix r = qr_.matrixR()
                     .topLeftCorner(std::min(cols_, rows_), rows_)
                     .triangularView<Eigen::Upper>();
      Matrix at = q.leftCols(std::min(cols_, rows_)) * r;
      // undo column pivoting of A^T
      return (at * qr_.colsPermutation().transpose()).transpose();
    }
    case FactorKind::NormalCholesky: {
      Matrix l = llt_.matrixL();
      return l * l.transpose();
    }
    case FactorKind::KktSymmetricIndefinite: {
      const int n = cols_, m = rows_;
      Matrix kkt = Matrix::Zero(n + m, n + m);
      kkt.topLeftCorner(n, n) = shift_ * Matrix::Identity(n, n);
      kkt.topRightCorner(n, m) = a_.transpose();
      kkt.bottomLeftCorner(m, n) = a_;
      return kkt;
    }
  }
  return {};
}

Vector Factorization::solve(const Vector& rhs) const {
  switch (kind_) {
    case FactorKind::QrOfTranspose: {
      // min-norm solution of A x = rhs via A^T's QR
      Eigen::LLT<Matrix> g((a_ * a_.transpose()).eval());
      return a_.transpose() * g.solve(rhs);
    }
    case FactorKind::NormalCholesky:
      return llt_.solve(rhs);
    case FactorKind::KktSymmetricIndefinite:
      return ldlt_.solve(rhs);
  }
  return {};
}

Matrix Factorization::kernel() const {
  if (kind_ != FactorKind::QrOfTranspose)
    throw DomainError("Factorization::kernel requires QR-of-transpose kind");
  Matrix q = qr_.householderQ() * Matrix::Identity(cols_, cols_);
  return q.rightCols(cols_ - rows_);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0)
    throw DomainError("read_matrix: malformed header");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(is >> m(i, j))) throw DomainError("read_matrix: truncated data");
  return m;
}

void save_matrix(const std::filesystem::path& p, const Matrix& m) {
  std::ofstream os(p);
  if (!os) throw DomainError("save_matrix: cannot open " + p.string());
  write_matrix(os, m);
}

Matrix load_matrix(const std::filesystem::path& p) {
  std::ifstream is(p);
  if (!is) throw DomainError("load_matrix: cannot open " + p.string());
  return read_matrix(is);
}

void write_vector(std::ostream& os, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    os << format_double(v[i]) << '\n';
}

Vector read_vector(std::istream& is) {
  std::vector<double> vals;
  double x;
  while (is >> x) vals.push_back(x);
  Vector v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

void save_vector(const std::filesystem::path& p, const Vector& v) {
  std::ofstream os(p);
  if (!os) throw DomainError("save_vector: cannot open " + p.string());
  write_vector(os, v);
}

Vector load_vector(const std::filesystem::path& p) {
  std::ifstream is(p);
  if (!is) throw DomainError("load_vector: cannot open " + p.string());
  return read_vector(is);
}

}  // namespace ratiocs
