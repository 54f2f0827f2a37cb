// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0
//
// Compares the serial reference path against the OpenMP path on the same
// experiment spec and checks that the aggregated outputs are identical.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ratiocs/certificates.hpp"
#include "ratiocs/harness.hpp"

using namespace ratiocs;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::cout << "threads available: " << threads << "\n";

  ExperimentSpec spec;
  spec.kind = "recovery_rate";
  spec.m = 30;
  spec.n = 120;
  spec.s_list = {4, 8};
  spec.trials = 8;
  spec.replications = 2;
  spec.methods = {"l1", "omp", "cosamp"};
  spec.seed = 7;
  spec.record_timing = false;  // summaries must match byte for byte

  auto t0 = std::chrono::steady_clock::now();
  const ExperimentOutput serial = run_recovery_rate(spec, 1);
  const double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const ExperimentOutput parallel = run_recovery_rate(spec, threads);
  const double t_parallel = seconds_since(t0);

  const bool same_summary = serial.summary_json() == parallel.summary_json();
  const bool same_records =
      records_to_csv(serial.records) == records_to_csv(parallel.records);

  std::cout << "recovery sweep: serial " << t_serial << " s, parallel "
            << t_parallel << " s, speedup " << t_serial / t_parallel << "x\n";
  std::cout << "summary identical: " << (same_summary ? "yes" : "NO") << "\n";
  std::cout << "records identical: " << (same_records ? "yes" : "NO") << "\n";

  SeededRng rng(11, 0);
  t0 = std::chrono::steady_clock::now();
  SeededRng r1 = rng.child(1);
  const WidthEstimate w_serial = gaussian_width_l1ball(500, 200000, r1, 1);
  const double tw_serial = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  SeededRng r2 = rng.child(1);
  const WidthEstimate w_parallel = gaussian_width_l1ball(500, 200000, r2, threads);
  const double tw_parallel = seconds_since(t0);

  std::cout << "width estimate: serial " << tw_serial << " s, parallel "
            << tw_parallel << " s\n";
  std::cout << "width values identical: "
            << (w_serial.estimate == w_parallel.estimate ? "yes" : "NO")
            << "\n";

  return (same_summary && same_records &&
          w_serial.estimate == w_parallel.estimate)
             ? 0
             : 1;
}
