// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0
//
// Single-binary CLI: instance generation, solvers, certificate checks,
// brute-force oracles, and Monte-Carlo experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "ratiocs/certificates.hpp"
#include "ratiocs/errors.hpp"
#include "ratiocs/harness.hpp"
#include "ratiocs/model.hpp"
#include "ratiocs/oracle.hpp"
#include "ratiocs/solvers.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace ratiocs;
using nlohmann::json;

int default_parallelism() {
  if (const char* env = std::getenv("RATIO_CS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

SolverConfig load_config(const std::string& path) {
  if (path.empty()) return SolverConfig{};
  return SolverConfig::from_json_text(read_file(path));
}

struct GenOpts {
  std::string out;
  int m = 50, n = 250, s = 6;
  uint64_t seed = 1;
  std::string dist = "uniform_annulus";
  double a = 5.0, b = 10.0;
  double epsilon = 0.0;
};

int cmd_gen(const GenOpts& o) {
  CoefficientDistribution dist =
      o.dist == "uniform_sym" ? CoefficientDistribution::uniform_sym(o.b)
                              : CoefficientDistribution::uniform_annulus(o.a, o.b);
  SeededRng rng(o.seed, 0);
  ProblemInstance inst;
  inst.a = gaussian_matrix(rng, o.m, o.n);
  inst.truth = generate_signal(rng, o.n, o.s, dist);
  inst.b = inst.a * inst.truth->values;
  if (o.epsilon > 0.0) {
    Vector noise(o.m);
    for (int i = 0; i < o.m; ++i) noise[i] = rng.normal();
    const double eps = o.epsilon * inst.b.norm();
    inst.b += noise * (eps / noise.norm());
    inst.noise_level = eps;
  }
  InstanceMeta meta;
  meta.m = o.m;
  meta.n = o.n;
  meta.s = o.s;
  meta.seed = o.seed;
  meta.epsilon = inst.noise_level;
  meta.dist = dist;
  save_instance(o.out, inst, meta);
  std::cout << "wrote instance bundle to " << o.out << " (m=" << o.m
            << " n=" << o.n << " s=" << o.s << ")\n";
  return 0;
}

struct SolveOpts {
  std::string instance, method = "l1", config, out, init;
  int s = 0;
  bool trace = false;
};

int cmd_solve(const SolveOpts& o) {
  const std::string method = canonical_method(o.method);
  if (method.empty()) {
    std::cerr << "unknown method '" << o.method << "'; available:";
    for (const auto& mth : registered_methods()) std::cerr << ' ' << mth;
    std::cerr << "\n";
    std::exit(2);
  }
  InstanceMeta meta;
  const ProblemInstance inst = load_instance(o.instance, &meta);
  SolverConfig cfg = load_config(o.config);
  if (inst.noise_level > 0.0 && cfg.noise_epsilon == 0.0)
    cfg.noise_epsilon = inst.noise_level;
  const int s = o.s > 0 ? o.s : meta.s;

  SolverResult res;
  if (!o.init.empty() && (method == "l1l2" || method == "irls-lq")) {
    const Vector x0 = load_vector(o.init);
    res = method == "l1l2" ? solve_l1l2(inst, cfg, x0)
                           : solve_irls_lq(inst, cfg, x0);
  } else {
    res = run_method(method, inst, cfg, s);
  }
  if (res.termination == Termination::NumericalFailure) {
    json err{{"error", res.error.empty() ? "solver failed" : res.error},
             {"method", method}};
    std::cout << err.dump() << "\n";
    return 1;
  }
  const double feas = (inst.a * res.x - inst.b).norm();
  std::cout << "method=" << method
            << " ratio=" << format_double(l1_l2_objective(res.x))
            << " feasibility=" << format_double(feas)
            << " time_s=" << format_double(res.wall_time) << "\n";
  if (!o.out.empty()) write_file(o.out, res.to_json_text(o.trace));
  return 0;
}

struct CertifyOpts {
  std::string instance, condition, out, xstar;
  bool exact = false;
  int s = 2, n = 100, samples = 1000, restarts = 20;
  double c = 0.0, q = 1.0, alpha = 0.5;
  uint64_t seed = 1;
};

int cmd_certify(const CertifyOpts& o) {
  CertificateReport rep;
  if (o.condition == "width") {
    SeededRng rng(o.seed, 0);
    const WidthEstimate est = gaussian_width_l1ball(o.n, o.samples, rng);
    const double bound = std::sqrt(8.0 * std::log(static_cast<double>(o.n)));
    rep.condition = "width-bound";
    rep.quantities["estimate"] = est.estimate;
    rep.quantities["stderr"] = est.stderr_;
    rep.quantities["bound"] = bound;
    rep.seed = o.seed;
    rep.verdict = est.estimate <= bound + 3.0 * est.stderr_ ? Verdict::Holds
                                                            : Verdict::Fails;
  } else if (o.condition == "kappa-conc") {
    SeededRng rng(o.seed, 0);
    const KappaConcentrationReport kc =
        kappa_concentration_experiment(rng, {2, 4, 8, 16, 32}, o.samples);
    rep.condition = "kappa-concentration";
    for (size_t i = 0; i < kc.s_list.size(); ++i)
      rep.quantities["q99_s" + std::to_string(kc.s_list[i])] = kc.quantile99[i];
    rep.seed = o.seed;
    rep.verdict = kc.bounded ? Verdict::Holds : Verdict::Fails;
  } else {
    InstanceMeta meta;
    const ProblemInstance inst = load_instance(o.instance, &meta);
    SeededRng rng(o.seed, 0);
    if (o.condition == "nsp") {
      const double c = o.c > 0.0 ? o.c : 1.0 / (std::sqrt(double(o.s)) + 2.0);
      rep = o.exact ? check_nsp_exact(inst.a, o.s, c, o.q)
                    : check_nsp_falsify(inst.a, o.s, c, o.q, rng, o.samples);
    } else if (o.condition == "local-opt") {
      if (!inst.truth) throw DomainError("local-opt needs the true signal");
      if (o.exact) {
        rep = check_local_optimality(inst.truth->values, inst.a, true);
      } else {
        const KernelRatioEstimate est =
            kernel_ratio_minimize(inst.a, 1.0, o.restarts, rng);
        rep = check_local_optimality(inst.truth->values, inst.a, false, &est);
      }
    } else if (o.condition == "uniform") {
      const KernelRatioEstimate est =
          kernel_ratio_minimize(inst.a, o.q, o.restarts, rng);
      rep = check_uniform_recovery_condition(inst.a, o.s, o.q, est);
    } else if (o.condition == "robustness") {
      if (!inst.truth) throw DomainError("robustness needs the true signal");
      if (o.xstar.empty()) throw DomainError("robustness needs --xstar");
      rep = check_robustness_dichotomy(inst.truth->values, load_vector(o.xstar),
                                       inst.a, o.alpha);
    } else {
      throw DomainError("unknown condition: " + o.condition);
    }
  }
  std::cout << "condition=" << rep.condition
            << " verdict=" << to_string(rep.verdict) << "\n";
  if (!o.out.empty()) write_file(o.out, rep.to_json_text());
  return 0;
}

struct OracleOpts {
  std::string instance, mode = "sparsest", out;
};

int cmd_oracle(const OracleOpts& o) {
  const ProblemInstance inst = load_instance(o.instance);
  if (o.mode == "sparsest") {
    const SparseSignal sol = sparsest_solution(inst);
    json j{{"sparsity", sol.sparsity()},
           {"support", sol.support},
           {"x", std::vector<double>(sol.values.data(),
                                     sol.values.data() + sol.values.size())}};
    std::cout << "sparsest solution: sparsity=" << sol.sparsity() << "\n";
    if (!o.out.empty()) write_file(o.out, j.dump(2));
    return 0;
  }
  if (o.mode == "ratio") {
    const GlobalRatioResult res = global_ratio_min(inst);
    json j{{"ratio", res.ratio},
           {"grid_resolution", res.grid_resolution},
           {"x", std::vector<double>(res.x.data(), res.x.data() + res.x.size())}};
    std::cout << "global ratio minimum: " << format_double(res.ratio) << "\n";
    if (!o.out.empty()) write_file(o.out, j.dump(2));
    return 0;
  }
  throw DomainError("unknown oracle mode: " + o.mode);
}

struct ExperimentOpts {
  std::string spec_path, out;
  int parallelism = 0;
  bool paper_scale = false;
  long long seed = -1;
};

int cmd_experiment(const ExperimentOpts& o) {
  ExperimentSpec spec = ExperimentSpec::from_json_text(read_file(o.spec_path));
  if (o.paper_scale) {
    spec.trials = 100;
    spec.replications = 100;
  }
  if (o.seed >= 0) spec.seed = static_cast<uint64_t>(o.seed);
  const int par = o.parallelism > 0 ? o.parallelism : default_parallelism();
  std::cerr << "running " << spec.kind << " experiment (parallelism=" << par
            << ")\n";
  const ExperimentOutput out = run_experiment(spec, par);
  write_outputs(out, o.out);
  std::cerr << "wrote " << out.records.size() << " records to " << o.out
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ratiocs: sparse recovery via l1/l2 ratio minimization"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* c_gen = app.add_subcommand("gen", "generate an instance bundle");
  c_gen->add_option("--out", gen.out, "output directory")->required();
  c_gen->add_option("--m", gen.m, "rows");
  c_gen->add_option("--n", gen.n, "columns");
  c_gen->add_option("--s", gen.s, "sparsity");
  c_gen->add_option("--seed", gen.seed, "rng seed");
  c_gen->add_option("--dist", gen.dist, "uniform_sym | uniform_annulus");
  c_gen->add_option("--a", gen.a, "annulus inner radius");
  c_gen->add_option("--b", gen.b, "annulus outer radius / sym half-width");
  c_gen->add_option("--epsilon", gen.epsilon, "relative noise level");

  SolveOpts solve;
  CLI::App* c_solve = app.add_subcommand("solve", "run a solver on a bundle");
  c_solve->add_option("instance", solve.instance, "instance bundle dir")
      ->required();
  c_solve->add_option("--method", solve.method, "solver name");
  c_solve->add_option("--config", solve.config, "SolverConfig JSON path");
  c_solve->add_option("--out", solve.out, "result JSON path");
  c_solve->add_option("--init", solve.init, "initial point vector file");
  c_solve->add_option("--s", solve.s, "sparsity hint");
  c_solve->add_flag("--trace", solve.trace, "include objective trace");

  CertifyOpts cert;
  CLI::App* c_cert = app.add_subcommand("certify", "check a condition");
  c_cert->add_option("--instance", cert.instance, "instance bundle dir");
  c_cert->add_option("--condition", cert.condition,
                     "nsp | local-opt | uniform | robustness | width | "
                     "kappa-conc")
      ->required();
  c_cert->add_flag("--exact", cert.exact, "exact small-dimension mode");
  c_cert->add_option("--s", cert.s, "sparsity");
  c_cert->add_option("--c", cert.c, "NSP constant");
  c_cert->add_option("--q", cert.q, "quasi-norm exponent");
  c_cert->add_option("--n", cert.n, "ambient dimension (width)");
  c_cert->add_option("--samples", cert.samples, "Monte-Carlo samples");
  c_cert->add_option("--restarts", cert.restarts, "minimization restarts");
  c_cert->add_option("--alpha", cert.alpha, "robustness alpha");
  c_cert->add_option("--xstar", cert.xstar, "candidate solution vector file");
  c_cert->add_option("--seed", cert.seed, "rng seed");
  c_cert->add_option("--out", cert.out, "report JSON path");

  OracleOpts oracle;
  CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force ground truth");
  c_oracle->add_option("--instance", oracle.instance, "instance bundle dir")
      ->required();
  c_oracle->add_option("--mode", oracle.mode, "sparsest | ratio");
  c_oracle->add_option("--out", oracle.out, "result JSON path");

  ExperimentOpts exp;
  CLI::App* c_exp = app.add_subcommand("experiment", "run an experiment spec");
  c_exp->add_option("--spec", exp.spec_path, "ExperimentSpec JSON path")
      ->required();
  c_exp->add_option("--out", exp.out, "output directory")->required();
  c_exp->add_option("--parallelism", exp.parallelism, "worker count");
  c_exp->add_option("--seed", exp.seed, "override spec seed");
  c_exp->add_flag("--paper-scale", exp.paper_scale,
                  "100 trials x 100 replications");

  CLI::App* c_ver = app.add_subcommand("version", "print version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_gen->parsed()) return cmd_gen(gen);
    if (c_solve->parsed()) return cmd_solve(solve);
    if (c_cert->parsed()) return cmd_certify(cert);
    if (c_oracle->parsed()) return cmd_oracle(oracle);
    if (c_exp->parsed()) return cmd_experiment(exp);
    if (c_ver->parsed()) {
      std::cout << "ratiocs " << kVersion << "\n";
      return 0;
    }
  } catch (const DomainError& e) {
    nlohmann::json err{{"error", e.what()}};
    std::cout << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
