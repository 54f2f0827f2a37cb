// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0

#include "ratiocs/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ratiocs/certificates.hpp"
#include "ratiocs/errors.hpp"

namespace ratiocs {

using nlohmann::json;

namespace {

uint64_t trial_stream(uint64_t rep, uint64_t s, uint64_t trial) {
  return hash_combine(hash_combine(hash_combine(0x5e0ada7aULL, rep), s), trial);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (sorted.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const double frac = pos - lo;
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

std::string quantile_key(double q) {
  std::ostringstream os;
  os << "q" << q;
  return os.str();
}

double pearson(const Vector& x, const Vector& y, bool* zero_variance) {
  const double mx = x.mean(), my = y.mean();
  const Vector dx = x.array() - mx, dy = y.array() - my;
  const double nx = dx.norm(), ny = dy.norm();
  if (nx == 0.0 || ny == 0.0) {
    *zero_variance = true;
    return 0.0;
  }
  *zero_variance = false;
  return dx.dot(dy) / (nx * ny);
}

ProblemInstance make_instance(SeededRng& rng, int m, int n, int s,
                              const CoefficientDistribution& dist) {
  ProblemInstance inst;
  inst.a = gaussian_matrix(rng, m, n);
  inst.truth = generate_signal(rng, n, s, dist);
  inst.b = inst.a * inst.truth->values;
  return inst;
}

ExperimentRecord run_one(const std::string& method, const ProblemInstance& inst,
                         const ExperimentSpec& spec, int s, int rep, int trial,
                         Vector* x_out = nullptr) {
  ExperimentRecord rec;
  rec.method = method;
  rec.s = s;
  rec.replication = rep;
  rec.trial = trial;
  const SolverResult res = run_method(method, inst, spec.cfg, s);
  if (x_out) *x_out = res.x;
  const SparseSignal& truth = *inst.truth;
  if (res.termination != Termination::NumericalFailure && res.x.size() > 0) {
    rec.recovered = recovery_success(res.x, truth, inst.m());
    Vector approx = res.x;
    if (rec.recovered)
      approx = refit_on_support(inst, best_k_term(res.x, s).support);
    rec.rel_error = (approx - truth.values).norm() / truth.values.norm();
  } else {
    rec.recovered = false;
    rec.rel_error = 1.0;
    rec.extra["failed"] = 1.0;
  }
  rec.wall_ms = spec.record_timing ? res.wall_time * 1000.0 : 0.0;
  return rec;
}

void summarize_recovery(const ExperimentSpec& spec,
                        ExperimentOutput* out) {
  for (const auto& method : spec.methods) {
    const std::string canon = canonical_method(method);
    for (int s : spec.s_list) {
      std::vector<double> rep_rates(spec.replications, 0.0);
      std::vector<int> rep_counts(spec.replications, 0);
      double time_sum = 0.0;
      int count = 0;
      for (const auto& rec : out->records) {
        if (rec.method != canon || rec.s != s) continue;
        rep_rates[rec.replication] += rec.recovered ? 1.0 : 0.0;
        rep_counts[rec.replication] += 1;
        time_sum += rec.wall_ms;
        ++count;
      }
      if (count == 0) continue;
      double rate_sum = 0.0;
      for (int r = 0; r < spec.replications; ++r) {
        if (rep_counts[r] > 0) rep_rates[r] /= rep_counts[r];
        rate_sum += rep_rates[r];
      }
      std::sort(rep_rates.begin(), rep_rates.end());
      SummaryCell cell;
      for (double q : spec.quantiles)
        cell.quantiles[quantile_key(q)] = quantile_sorted(rep_rates, q);
      cell.mean_rate = rate_sum / spec.replications;
      cell.mean_time_ms = time_sum / count;
      out->per_method[canon][s] = cell;
    }
  }
}

}  // namespace

void ExperimentSpec::validate() const {
  static const std::set<std::string> kinds = {
      "recovery_rate", "timing",      "correlation",
      "case_study",    "width_check", "robustness_check"};
  if (!kinds.count(kind)) throw DomainError("unknown experiment kind: " + kind);
  if (trials < 1 || replications < 1)
    throw DomainError("trials and replications must be >= 1");
  for (double q : quantiles)
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantiles must lie in (0,1)");
  if (kind == "recovery_rate" || kind == "correlation" || kind == "timing") {
    if (methods.empty()) throw DomainError("methods must be nonempty");
    for (const auto& mth : methods)
      if (canonical_method(mth).empty())
        throw DomainError("unknown method: " + mth);
  }
  if (kind == "timing")
    for (int nn : n_list)
      if (nn < 4 || (nn & (nn - 1)) != 0)
        throw DomainError("timing n_list entries must be powers of two");
}

std::string ExperimentSpec::to_json_text() const {
  json j{{"kind", kind},
         {"m", m},
         {"n", n},
         {"s_list", s_list},
         {"trials", trials},
         {"replications", replications},
         {"dist",
          {{"kind", dist.kind == CoefficientDistribution::Kind::UniformSym
                        ? "uniform_sym"
                        : "uniform_annulus"},
           {"a", dist.a},
           {"b", dist.b}}},
         {"methods", methods},
         {"seed", seed},
         {"quantiles", quantiles},
         {"cfg", json::parse(cfg.to_json_text())},
         {"n_list", n_list},
         {"samples", samples},
         {"timeout_seconds", timeout_seconds},
         {"width_samples", width_samples},
         {"noise_fraction", noise_fraction},
         {"record_timing", record_timing}};
  return j.dump(2);
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  ExperimentSpec spec;
  spec.kind = j.value("kind", spec.kind);
  spec.m = j.value("m", spec.m);
  spec.n = j.value("n", spec.n);
  spec.s_list = j.value("s_list", spec.s_list);
  spec.trials = j.value("trials", spec.trials);
  spec.replications = j.value("replications", spec.replications);
  if (j.contains("dist")) {
    const auto& d = j.at("dist");
    const std::string kind = d.value("kind", "uniform_annulus");
    if (kind == "uniform_sym")
      spec.dist = CoefficientDistribution::uniform_sym(d.value("b", 10.0));
    else
      spec.dist = CoefficientDistribution::uniform_annulus(d.value("a", 5.0),
                                                           d.value("b", 10.0));
  }
  spec.methods = j.value("methods", spec.methods);
  spec.seed = j.value("seed", spec.seed);
  spec.quantiles = j.value("quantiles", spec.quantiles);
  if (j.contains("cfg"))
    spec.cfg = SolverConfig::from_json_text(j.at("cfg").dump());
  spec.n_list = j.value("n_list", spec.n_list);
  spec.samples = j.value("samples", spec.samples);
  spec.timeout_seconds = j.value("timeout_seconds", spec.timeout_seconds);
  spec.width_samples = j.value("width_samples", spec.width_samples);
  spec.noise_fraction = j.value("noise_fraction", spec.noise_fraction);
  spec.record_timing = j.value("record_timing", spec.record_timing);
  spec.validate();
  return spec;
}

uint64_t ExperimentSpec::digest() const {
  const std::string text = to_json_text();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) h = hash_combine(h, ch);
  return h;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  os << "method,s,replication,trial,recovered,rel_error,wall_ms,extra_json\n";
  for (const auto& r : records) {
    json extra(r.extra);
    std::string extra_text = extra.dump();
    // commas inside the JSON cell are quoted per RFC 4180
    std::string quoted = "\"";
    for (char c : extra_text) {
      if (c == '"') quoted += "\"\"";
      else quoted += c;
    }
    quoted += "\"";
    os << r.method << ',' << r.s << ',' << r.replication << ',' << r.trial
       << ',' << (r.recovered ? 1 : 0) << ',' << format_double(r.rel_error)
       << ',' << format_double(r.wall_ms) << ',' << quoted << '\n';
  }
  return os.str();
}

std::string ExperimentOutput::summary_json() const {
  json per;
  for (const auto& [method, cells] : per_method) {
    json by_s;
    for (const auto& [s, cell] : cells) {
      by_s[std::to_string(s)] = {{"quantiles", cell.quantiles},
                                 {"mean_rate", cell.mean_rate},
                                 {"mean_time_ms", cell.mean_time_ms}};
    }
    per[method] = by_s;
  }
  json j{{"spec_digest", spec_digest}, {"per_method", per}};
  return j.dump(2);
}

ExperimentOutput run_recovery_rate(const ExperimentSpec& spec,
                                   int parallelism) {
  spec.validate();
  ExperimentOutput out;
  out.spec_digest = spec.digest();
  const int n_s = static_cast<int>(spec.s_list.size());
  const int n_methods = static_cast<int>(spec.methods.size());
  const int cells = spec.replications * n_s * spec.trials;
  out.records.resize(static_cast<size_t>(cells) * n_methods);

#pragma omp parallel for schedule(dynamic) if (parallelism > 1)
  for (int cell = 0; cell < cells; ++cell) {
    const int rep = cell / (n_s * spec.trials);
    const int si = (cell / spec.trials) % n_s;
    const int trial = cell % spec.trials;
    const int s = spec.s_list[si];
    SeededRng rng(spec.seed, trial_stream(rep, s, trial));
    const ProblemInstance inst = make_instance(rng, spec.m, spec.n, s, spec.dist);
    for (int mi = 0; mi < n_methods; ++mi) {
      const std::string method = canonical_method(spec.methods[mi]);
      ExperimentRecord rec;
      try {
        rec = run_one(method, inst, spec, s, rep, trial);
      } catch (const std::exception&) {
        rec.method = method;
        rec.s = s;
        rec.replication = rep;
        rec.trial = trial;
        rec.recovered = false;
        rec.rel_error = 1.0;
        rec.extra["failed"] = 1.0;
      }
      rec.extra["instance_digest"] =
          static_cast<double>(instance_digest(inst) >> 12);
      out.records[static_cast<size_t>(cell) * n_methods + mi] = rec;
    }
  }
  summarize_recovery(spec, &out);
  return out;
}

ExperimentOutput run_timing(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentOutput out;
  out.spec_digest = spec.digest();
  std::ostringstream report;
  report << "method,n,s,log10_n,log10_ms,mean_ms,missing\n";
  for (const auto& raw : spec.methods) {
    const std::string method = canonical_method(raw);
    for (int nn : spec.n_list) {
      const int mm = nn / 4;
      const int ss = mm / 4;
      double total_ms = 0.0;
      int ok = 0, missing = 0;
      for (int sample = 0; sample < spec.samples; ++sample) {
        SeededRng rng(spec.seed, trial_stream(0, nn, sample));
        const ProblemInstance inst =
            make_instance(rng, mm, nn, ss, CoefficientDistribution::uniform_sym(10.0));
        ExperimentRecord rec;
        rec.method = method;
        rec.s = ss;
        rec.trial = sample;
        double ms;
        if (method == "l1l2+ss") {
          // support selection runs s independent descents; its cost is
          // accounted as s times one descent
          const SolverResult base = run_method("l1l2", inst, spec.cfg, ss);
          ms = ss * base.wall_time * 1000.0;
          rec.recovered = recovery_success(base.x, *inst.truth, inst.m());
        } else {
          const SolverResult res = run_method(method, inst, spec.cfg, ss);
          ms = res.wall_time * 1000.0;
          rec.recovered = recovery_success(res.x, *inst.truth, inst.m());
        }
        rec.extra["n"] = nn;
        if (ms > spec.timeout_seconds * 1000.0) {
          rec.extra["missing"] = 1.0;
          ++missing;
        } else {
          rec.wall_ms = spec.record_timing ? ms : 0.0;
          total_ms += ms;
          ++ok;
        }
        out.records.push_back(rec);
      }
      const double mean_ms = ok > 0 ? total_ms / ok : 0.0;
      SummaryCell cell;
      cell.mean_time_ms = spec.record_timing ? mean_ms : 0.0;
      out.per_method[method][nn] = cell;
      report << method << ',' << nn << ',' << ss << ','
             << format_double(std::log10(static_cast<double>(nn))) << ','
             << (ok > 0 ? format_double(std::log10(std::max(mean_ms, 1e-9)))
                        : "nan")
             << ',' << format_double(mean_ms) << ',' << missing << '\n';
    }
  }
  out.report_text = report.str();
  return out;
}

ExperimentOutput run_correlation(const ExperimentSpec& spec, int parallelism) {
  spec.validate();
  bool has_l1 = false;
  for (const auto& mth : spec.methods)
    if (canonical_method(mth) == "l1") has_l1 = true;
  if (!has_l1)
    throw DomainError("correlation experiment needs l1 among the methods");

  ExperimentOutput out;
  out.spec_digest = spec.digest();
  const int n_s = static_cast<int>(spec.s_list.size());
  const int n_methods = static_cast<int>(spec.methods.size());
  const int cells = spec.replications * n_s * spec.trials;
  out.records.resize(static_cast<size_t>(cells) * n_methods);

#pragma omp parallel for schedule(dynamic) if (parallelism > 1)
  for (int cell = 0; cell < cells; ++cell) {
    const int rep = cell / (n_s * spec.trials);
    const int si = (cell / spec.trials) % n_s;
    const int trial = cell % spec.trials;
    const int s = spec.s_list[si];
    SeededRng rng(spec.seed, trial_stream(rep, s, trial));
    const ProblemInstance inst = make_instance(rng, spec.m, spec.n, s, spec.dist);
    const SolverResult l1_res = run_method("l1", inst, spec.cfg, s);
    const SparseSignal l1_top = best_k_term(l1_res.x, s);
    std::vector<int> inter;
    std::set_intersection(inst.truth->support.begin(),
                          inst.truth->support.end(), l1_top.support.begin(),
                          l1_top.support.end(), std::back_inserter(inter));
    const double detected = static_cast<double>(inter.size());
    for (int mi = 0; mi < n_methods; ++mi) {
      const std::string method = canonical_method(spec.methods[mi]);
      ExperimentRecord rec;
      try {
        Vector x;
        rec = run_one(method, inst, spec, s, rep, trial, &x);
        bool flat = false;
        rec.extra["correlation"] = pearson(x, inst.truth->values, &flat);
        if (flat) rec.extra["zero_variance"] = 1.0;
      } catch (const std::exception&) {
        rec.method = method;
        rec.s = s;
        rec.replication = rep;
        rec.trial = trial;
        rec.extra["failed"] = 1.0;
      }
      rec.extra["detected_support_size"] = detected;
      out.records[static_cast<size_t>(cell) * n_methods + mi] = rec;
    }
  }
  summarize_recovery(spec, &out);

  // binned recovery rate by l1-detected support size
  std::ostringstream report;
  report << "method,detected_support_size,recovery_rate,count\n";
  for (const auto& raw : spec.methods) {
    const std::string method = canonical_method(raw);
    std::map<int, std::pair<int, int>> bins;  // detected -> (recovered, total)
    for (const auto& rec : out.records) {
      if (rec.method != method) continue;
      auto it = rec.extra.find("detected_support_size");
      if (it == rec.extra.end()) continue;
      auto& bin = bins[static_cast<int>(it->second)];
      bin.first += rec.recovered ? 1 : 0;
      bin.second += 1;
    }
    for (const auto& [det, bin] : bins)
      report << method << ',' << det << ','
             << format_double(static_cast<double>(bin.first) / bin.second)
             << ',' << bin.second << '\n';
  }
  out.report_text = report.str();
  return out;
}

ExperimentOutput run_case_study(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentOutput out;
  out.spec_digest = spec.digest();
  const int s = spec.s_list.empty() ? 16 : spec.s_list.front();
  const int seed_budget = std::max(50, spec.trials * spec.replications);

  for (int attempt = 0; attempt < seed_budget; ++attempt) {
    SeededRng rng(spec.seed, trial_stream(0, s, attempt));
    const ProblemInstance inst = make_instance(rng, spec.m, spec.n, s, spec.dist);
    const SolverResult l1_res = run_method("l1", inst, spec.cfg, s);
    if (recovery_success(l1_res.x, *inst.truth, inst.m())) continue;
    const SolverResult dca = run_method("l1l2", inst, spec.cfg, s);
    if (recovery_success(dca.x, *inst.truth, inst.m())) continue;
    const SolverResult ss = run_method("l1l2+ss", inst, spec.cfg, s);
    if (!recovery_success(ss.x, *inst.truth, inst.m())) continue;

    const double truth_ratio = l1_l2_objective(inst.truth->values);
    const double l1_ratio = l1_l2_objective(l1_res.x);
    const double l1_init_ratio = l1_l2_objective(dca.x);
    double best_ratio = *std::min_element(ss.candidate_ratios.begin(),
                                          ss.candidate_ratios.end());
    std::ostringstream report;
    report << "case study: seed=" << spec.seed << " attempt=" << attempt
           << " m=" << spec.m << " n=" << spec.n << " s=" << s << "\n";
    report << "truth_ratio=" << format_double(truth_ratio)
           << " l1_ratio=" << format_double(l1_ratio)
           << " l1_init_ratio=" << format_double(l1_init_ratio) << "\n";
    report << "init_index,support_index,ratio,winner\n";
    for (size_t i = 0; i < ss.candidate_indices.size(); ++i) {
      const bool winner =
          std::abs(ss.candidate_ratios[i] - best_ratio) <= 1e-12;
      report << i << ',' << ss.candidate_indices[i] << ','
             << format_double(ss.candidate_ratios[i]) << ','
             << (winner ? 1 : 0) << '\n';
      ExperimentRecord rec;
      rec.method = "l1l2+ss";
      rec.s = s;
      rec.trial = static_cast<int>(i);
      rec.recovered = winner;
      rec.rel_error =
          (ss.x - inst.truth->values).norm() / inst.truth->values.norm();
      rec.extra["ratio"] = ss.candidate_ratios[i];
      rec.extra["support_index"] = ss.candidate_indices[i];
      out.records.push_back(rec);
    }
    out.report_text = report.str();
    return out;
  }
  out.report_text = "NoCaseFound: no instance within the seed budget where "
                    "l1 and the l1-initialized ratio descent fail but "
                    "support selection succeeds\n";
  return out;
}

ExperimentOutput run_width_check(const ExperimentSpec& spec, int parallelism) {
  spec.validate();
  ExperimentOutput out;
  out.spec_digest = spec.digest();
  std::ostringstream report;
  report << "n,estimate,stderr,bound\n";
  SeededRng rng(spec.seed, 0x11d7ULL);
  for (int nn : spec.n_list) {
    SeededRng local = rng.child(static_cast<uint64_t>(nn));
    const WidthEstimate est =
        gaussian_width_l1ball(nn, spec.width_samples, local, parallelism);
    const double bound = std::sqrt(8.0 * std::log(static_cast<double>(nn)));
    ExperimentRecord rec;
    rec.method = "width";
    rec.s = nn;
    rec.recovered = est.estimate <= bound + 3.0 * est.stderr_;
    rec.extra["estimate"] = est.estimate;
    rec.extra["stderr"] = est.stderr_;
    rec.extra["bound"] = bound;
    out.records.push_back(rec);
    report << nn << ',' << format_double(est.estimate) << ','
           << format_double(est.stderr_) << ',' << format_double(bound) << '\n';
  }
  out.report_text = report.str();
  return out;
}

ExperimentOutput run_robustness_check(const ExperimentSpec& spec,
                                      int parallelism) {
  spec.validate();
  ExperimentOutput out;
  out.spec_digest = spec.digest();
  const int s = spec.s_list.empty() ? 4 : spec.s_list.front();
  out.records.resize(spec.trials);

#pragma omp parallel for schedule(dynamic) if (parallelism > 1)
  for (int trial = 0; trial < spec.trials; ++trial) {
    SeededRng rng(spec.seed, trial_stream(0, s, trial));
    ProblemInstance inst = make_instance(rng, spec.m, spec.n, s, spec.dist);
    Vector noise(inst.m());
    for (int i = 0; i < inst.m(); ++i) noise[i] = rng.normal();
    const double eps = spec.noise_fraction * inst.b.norm();
    inst.b += noise * (eps / noise.norm());
    inst.noise_level = eps;

    ExperimentRecord rec;
    rec.method = "l1l2";
    rec.s = s;
    rec.trial = trial;
    SolverConfig cfg = spec.cfg;
    cfg.noise_epsilon = eps;
    try {
      const SolverResult res = run_method("l1l2", inst, cfg, s);
      const Vector& x0 = inst.truth->values;
      const Matrix basis = kernel_basis(inst.a);
      const Vector diff = res.x - x0;
      const Vector u = basis * (basis.transpose() * diff);
      double beta = 0.0;
      if (u.norm() > 1e-14 * std::max(1.0, diff.norm()))
        beta = 4.0 * std::sqrt(2.0 * s) * u.norm() / u.lpNorm<1>();
      rec.extra["beta"] = beta;
      if (beta >= 1.0) {
        rec.extra["skipped"] = 1.0;
      } else {
        const double alpha = (1.0 + beta) / 2.0;
        const CertificateReport rep =
            check_robustness_dichotomy(x0, res.x, inst.a, alpha);
        rec.recovered = rep.verdict == Verdict::Holds;
        rec.extra["alpha"] = alpha;
      }
      rec.rel_error = diff.norm() / x0.norm();
      rec.wall_ms = spec.record_timing ? res.wall_time * 1000.0 : 0.0;
    } catch (const std::exception&) {
      rec.extra["failed"] = 1.0;
    }
    out.records[trial] = rec;
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec, int parallelism) {
  spec.validate();
  if (spec.kind == "recovery_rate") return run_recovery_rate(spec, parallelism);
  if (spec.kind == "timing") return run_timing(spec);
  if (spec.kind == "correlation") return run_correlation(spec, parallelism);
  if (spec.kind == "case_study") return run_case_study(spec);
  if (spec.kind == "width_check") return run_width_check(spec, parallelism);
  return run_robustness_check(spec, parallelism);
}

void write_outputs(const ExperimentOutput& out,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(out_dir / "records.csv", std::ios::binary);
    if (!f) throw DomainError("cannot write " + (out_dir / "records.csv").string());
    f << records_to_csv(out.records);
  }
  {
    std::ofstream f(out_dir / "summary.json", std::ios::binary);
    f << out.summary_json() << '\n';
  }
  if (!out.report_text.empty()) {
    std::ofstream f(out_dir / "report.txt", std::ios::binary);
    f << out.report_text;
  }
}

}  // namespace ratiocs
