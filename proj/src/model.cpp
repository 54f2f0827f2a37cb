// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#include "ratiocs/model.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace ratiocs {

using nlohmann::json;

SparseSignal SparseSignal::from_dense(const Vector& v) {
  SparseSignal s;
  s.values = v;
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) s.support.push_back(i);
  return s;
}

CoefficientDistribution CoefficientDistribution::uniform_sym(double l) {
  CoefficientDistribution d;
  d.kind = Kind::UniformSym;
  d.b = l;
  return d;
}

CoefficientDistribution CoefficientDistribution::uniform_annulus(double a,
                                                                 double b) {
  if (!(0.0 < a && a < b))
    throw DomainError("uniform_annulus requires 0 < a < b");
  CoefficientDistribution d;
  d.kind = Kind::UniformAnnulus;
  d.a = a;
  d.b = b;
  return d;
}

double CoefficientDistribution::sample(SeededRng& rng) const {
  if (kind == Kind::UniformSym) return rng.uniform(-b, b);
  const double mag = rng.uniform(a, b);
  return rng.uniform() < 0.5 ? -mag : mag;
}

std::string CoefficientDistribution::name() const {
  return kind == Kind::UniformSym ? "uniform_sym" : "uniform_annulus";
}

SparseSignal generate_signal(SeededRng& rng, int n, int s,
                             const CoefficientDistribution& dist) {
  if (s < 1 || s > n) throw InvalidSparsity("generate_signal: need 1 <= s <= n");
  // partial Fisher-Yates for a uniform s-subset
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(rng.uniform_int(static_cast<uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }
  std::vector<int> support(idx.begin(), idx.begin() + s);
  std::sort(support.begin(), support.end());

  SparseSignal sig;
  sig.values = Vector::Zero(n);
  sig.support = support;
  for (int i : support) {
    double v = dist.sample(rng);
    while (v == 0.0) v = dist.sample(rng);
    sig.values[i] = v;
  }
  return sig;
}

SparseSignal best_k_term(const Vector& x, int k) {
  const int n = static_cast<int>(x.size());
  k = std::clamp(k, 0, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return std::abs(x[i]) > std::abs(x[j]);
  });
  SparseSignal s;
  s.values = Vector::Zero(n);
  for (int t = 0; t < k; ++t) {
    const int i = order[t];
    if (x[i] == 0.0) break;  // remaining entries are zero too
    s.values[i] = x[i];
    s.support.push_back(i);
  }
  std::sort(s.support.begin(), s.support.end());
  return s;
}

bool recovery_success(const Vector& x, const SparseSignal& truth, int m) {
  const SparseSignal best = best_k_term(x, m);
  return std::includes(best.support.begin(), best.support.end(),
                       truth.support.begin(), truth.support.end());
}

Vector refit_on_support(const ProblemInstance& inst,
                        const std::vector<int>& support) {
  Vector x = Vector::Zero(inst.n());
  if (support.empty()) return x;
  Matrix sub(inst.m(), static_cast<int>(support.size()));
  for (size_t j = 0; j < support.size(); ++j) sub.col(static_cast<int>(j)) = inst.a.col(support[j]);
  const Vector coef = least_squares(sub, inst.b);
  for (size_t j = 0; j < support.size(); ++j) x[support[j]] = coef[static_cast<int>(j)];
  return x;
}

namespace {

json dist_to_json(const CoefficientDistribution& d) {
  if (d.kind == CoefficientDistribution::Kind::UniformSym)
    return json{{"kind", "uniform_sym"}, {"L", d.b}};
  return json{{"kind", "uniform_annulus"}, {"a", d.a}, {"b", d.b}};
}

CoefficientDistribution dist_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform_sym")
    return CoefficientDistribution::uniform_sym(j.at("L").get<double>());
  if (kind == "uniform_annulus")
    return CoefficientDistribution::uniform_annulus(j.at("a").get<double>(),
                                                    j.at("b").get<double>());
  throw DomainError("unknown coefficient distribution: " + kind);
}

}  // namespace

void save_instance(const std::filesystem::path& dir, const ProblemInstance& inst,
                   const InstanceMeta& meta) {
  std::filesystem::create_directories(dir);
  save_matrix(dir / "A.mat", inst.a);
  save_vector(dir / "b.vec", inst.b);
  if (inst.truth) save_vector(dir / "truth.vec", inst.truth->values);
  json j{{"n", meta.n},       {"m", meta.m},
         {"s", meta.s},       {"epsilon", meta.epsilon},
         {"seed", meta.seed}, {"dist", dist_to_json(meta.dist)}};
  std::ofstream os(dir / "meta.json");
  if (!os) throw DomainError("save_instance: cannot write meta.json");
  os << j.dump(2) << '\n';
}

ProblemInstance load_instance(const std::filesystem::path& dir,
                              InstanceMeta* meta_out) {
  ProblemInstance inst;
  inst.a = load_matrix(dir / "A.mat");
  inst.b = load_vector(dir / "b.vec");
  if (std::filesystem::exists(dir / "truth.vec"))
    inst.truth = SparseSignal::from_dense(load_vector(dir / "truth.vec"));
  if (std::filesystem::exists(dir / "meta.json")) {
    std::ifstream is(dir / "meta.json");
    json j;
    is >> j;
    inst.noise_level = j.value("epsilon", 0.0);
    if (meta_out) {
      meta_out->n = j.value("n", inst.n());
      meta_out->m = j.value("m", inst.m());
      meta_out->s = j.value("s", 0);
      meta_out->epsilon = j.value("epsilon", 0.0);
      meta_out->seed = j.value("seed", uint64_t{0});
      if (j.contains("dist")) meta_out->dist = dist_from_json(j["dist"]);
    }
  }
  return inst;
}

uint64_t instance_digest(const ProblemInstance& inst) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto fold = [&h](const double* p, size_t count) {
    for (size_t i = 0; i < count; ++i) {
      uint64_t bits;
      std::memcpy(&bits, &p[i], sizeof(bits));
      h = hash_combine(h, bits);
    }
  };
  fold(inst.a.data(), static_cast<size_t>(inst.a.size()));
  fold(inst.b.data(), static_cast<size_t>(inst.b.size()));
  return h;
}

}  // namespace ratiocs
