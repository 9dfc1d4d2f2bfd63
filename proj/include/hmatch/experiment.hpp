#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "hmatch/algorithms.hpp"
#include "hmatch/generator.hpp"
#include "hmatch/metrics.hpp"

namespace hmatch {

enum class AlgorithmKind { alg1, cutoff, spda };

inline Matching run_algorithm(const Instance& inst, int k, AlgorithmKind a) {
  switch (a) {
    case AlgorithmKind::alg1: return construct_er_nw(inst, k);
    case AlgorithmKind::spda: return k_spda(inst, k, false).matching;
    case AlgorithmKind::cutoff: break;
  }
  return k_cutoff(inst, k, false).matching;
}

// Parameter grid for a Table-1 style sweep: every (phi_s, phi_c) pair gets
// `trials` independent instances, each run at every k.
struct ExperimentConfig {
  GenConfig base;  // phi values overridden per cell; seed from master_seed
  std::vector<double> phi_s_values = {0.7, 0.9};
  std::vector<double> phi_c_values = {0.5, 0.7, 0.9};
  std::vector<int> k_values = {0, 1, 2, 5, 10, 20, 50, 199};
  int trials = 50;
  std::uint64_t master_seed = 1;
  AlgorithmKind algorithm = AlgorithmKind::cutoff;
};

struct ResultRow {
  double phi_s = 0.0;
  double phi_c = 0.0;
  int k = 0;
  double avg_envy_received = 0.0;
  int max_envy_received = 0;  // max over trials; the other fields are means
  double maximum_objections = 0.0;
  double total_envy = 0.0;
  double total_claims = 0.0;
  double wall_ms = 0.0;  // kept out of the CSV so output stays deterministic
};

inline void validate_config(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, Errc::invalid_config, "trials must be >= 1");
  require(!cfg.phi_s_values.empty() && !cfg.phi_c_values.empty() &&
              !cfg.k_values.empty(),
          Errc::invalid_config, "empty parameter grid");
  for (int k : cfg.k_values)
    require(k >= 0 && k <= cfg.base.n_students, Errc::invalid_config,
            "k must lie in 0..|S|");
}

// Worker count: HMATCH_THREADS caps it when set; `requested` = 0 means use
// the hardware count.
inline int worker_count_from_env(int requested = 0) {
  int workers = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* env = std::getenv("HMATCH_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) workers = std::min(workers, cap);
  }
  return workers;
}

namespace detail {

struct TrialResult {
  std::vector<MetricsRecord> per_k;
  double wall_ms = 0.0;
};

inline void check_output(const Instance& inst, const Matching& y, int k,
                         const MetricsRecord& rec,
                         const std::vector<Claim>& claims) {
  require(matching_feasible(inst, y), Errc::self_check_failed,
          "algorithm emitted an infeasible matching");
  require(rec.max_envy_received <= k, Errc::self_check_failed,
          "algorithm output violates ER-" + std::to_string(k));
  for (const Claim& claim : claims)
    require(static_cast<int>(claim.objectors.size()) > k,
            Errc::self_check_failed,
            "algorithm output violates NW-" + std::to_string(k));
}

}  // namespace detail

// Runs the full grid. Trials are independent jobs over a small worker pool;
// results land in preassigned slots, so row order and content depend only on
// the config and master seed, not on scheduling. Trial t of pair p draws
// from RNG stream (master_seed, p * trials + t).
inline std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg,
                                        int threads = 0) {
  validate_config(cfg);

  struct Cell {
    double phi_s, phi_c;
  };
  std::vector<Cell> cells;
  for (double ps : cfg.phi_s_values)
    for (double pc : cfg.phi_c_values) cells.push_back({ps, pc});

  const int n_jobs = static_cast<int>(cells.size()) * cfg.trials;
  std::vector<detail::TrialResult> trial_results(n_jobs);

  auto run_trial = [&](int job) {
    const int pair_index = job / cfg.trials;
    const int trial = job % cfg.trials;
    (void)trial;
    GenConfig gen = cfg.base;
    gen.phi_s = cells[pair_index].phi_s;
    gen.phi_c = cells[pair_index].phi_c;
    gen.seed = cfg.master_seed;

    auto start = std::chrono::steady_clock::now();
    Instance inst = generate_instance(gen, static_cast<std::uint64_t>(job));
    detail::TrialResult& out = trial_results[job];
    out.per_k.reserve(cfg.k_values.size());
    for (int k : cfg.k_values) {
      Matching y = run_algorithm(inst, k, cfg.algorithm);
      std::vector<Claim> claims = claims_of(inst, y);
      MetricsRecord rec = compute_metrics(inst, y, claims);
      detail::check_output(inst, y, k, rec, claims);
      out.per_k.push_back(rec);
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  };

  const int workers = std::min(worker_count_from_env(threads), n_jobs);
  if (workers <= 1) {
    for (int job = 0; job < n_jobs; ++job) run_trial(job);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int job = next.fetch_add(1); job < n_jobs;
             job = next.fetch_add(1))
          run_trial(job);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<ResultRow> rows;
  rows.reserve(cells.size() * cfg.k_values.size());
  for (std::size_t pair_index = 0; pair_index < cells.size(); ++pair_index) {
    for (std::size_t ki = 0; ki < cfg.k_values.size(); ++ki) {
      ResultRow row;
      row.phi_s = cells[pair_index].phi_s;
      row.phi_c = cells[pair_index].phi_c;
      row.k = cfg.k_values[ki];
      for (int t = 0; t < cfg.trials; ++t) {
        const auto& trial =
            trial_results[pair_index * cfg.trials + t];
        const MetricsRecord& rec = trial.per_k[ki];
        row.avg_envy_received += rec.avg_envy_received;
        row.max_envy_received =
            std::max(row.max_envy_received, rec.max_envy_received);
        row.maximum_objections += rec.maximum_objections;
        row.total_envy += static_cast<double>(rec.total_envy);
        row.total_claims += rec.total_claims;
        row.wall_ms += trial.wall_ms / cfg.k_values.size();
      }
      row.avg_envy_received /= cfg.trials;
      row.maximum_objections /= cfg.trials;
      row.total_envy /= cfg.trials;
      row.total_claims /= cfg.trials;
      rows.push_back(row);
    }
  }
  return rows;
}

// Two decimals for trial-averaged fields, plain integers for per-run maxima;
// column set matches the experiment table.
inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "phi_s,phi_c,k,avg_envy_received,max_envy_received,"
        "maximum_objections,total_envy,total_claims\n";
  char buf[160];
  for (const ResultRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%g,%g,%d,%.2f,%d,%.2f,%.2f,%.2f\n",
                  row.phi_s, row.phi_c, row.k, row.avg_envy_received,
                  row.max_envy_received, row.maximum_objections,
                  row.total_envy, row.total_claims);
    os << buf;
  }
}

}  // namespace hmatch
