#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hmatch/core.hpp"
#include "hmatch/rng.hpp"

namespace hmatch {

enum class CapacityMethod { fixed, uniform, normal };

// Synthetic-instance parameters. phi values are Mallows dispersions in
// (0, 1]; rho_c is the target supply-demand ratio. The experiments leave
// rho_c unstated upstream, so its default of 0.5 is an assumption and is
// echoed into generated instance metadata.
struct GenConfig {
  int n_students = 0;
  int n_colleges = 0;
  double phi_s = 1.0;
  double phi_c = 1.0;
  double rho_c = 0.5;
  CapacityMethod capacity_method = CapacityMethod::normal;
  int uniform_lo = 1;   // uniform method only
  int uniform_hi = 1;   // uniform method only
  double std_ratio = 0.1;
  double region_ratio = 0.02;
  double region_capacity_ratio = 0.6;
  std::uint64_t seed = 0;
};

inline void validate_config(const GenConfig& cfg) {
  require(cfg.n_students >= 1 && cfg.n_colleges >= 1, Errc::invalid_config,
          "need at least one student and one college");
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  require(in_unit(cfg.phi_s), Errc::invalid_config, "phi_s must be in (0,1]");
  require(in_unit(cfg.phi_c), Errc::invalid_config, "phi_c must be in (0,1]");
  require(in_unit(cfg.rho_c), Errc::invalid_config, "rho must be in (0,1]");
  require(in_unit(cfg.region_ratio), Errc::invalid_config,
          "region_ratio must be in (0,1]");
  require(in_unit(cfg.region_capacity_ratio), Errc::invalid_config,
          "region_capacity_ratio must be in (0,1]");
  require(cfg.std_ratio > 0.0, Errc::invalid_config,
          "std_ratio must be positive");
  if (cfg.capacity_method == CapacityMethod::uniform)
    require(cfg.uniform_lo <= cfg.uniform_hi, Errc::invalid_range,
            "uniform capacity range is empty");
}

// Mallows sampling by repeated insertion: the i-th reference item (1-based)
// goes to position j in 1..i with probability phi^(i-j) / sum_t phi^t.
// phi = 1 is a uniform permutation; phi -> 0 collapses onto the reference.
inline std::vector<int> mallows_sample(const std::vector<int>& reference,
                                       double phi, SplitRng& rng) {
  std::vector<int> out;
  out.reserve(reference.size());
  std::vector<double> weights;  // weights[j-1] = phi^(i-j)
  weights.reserve(reference.size());
  for (std::size_t i = 1; i <= reference.size(); ++i) {
    weights.resize(i);
    double total = 0.0;
    double w = 1.0;  // phi^0, position j = i
    for (std::size_t j = i; j >= 1; --j) {
      weights[j - 1] = w;
      total += w;
      w *= phi;
    }
    double u = rng.uniform01() * total;
    std::size_t pick = i - 1;
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      acc += weights[j];
      if (u < acc) { pick = j; break; }
    }
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(pick),
               reference[i - 1]);
  }
  return out;
}

struct PreferenceProfile {
  std::vector<std::vector<CollegeId>> student_prefs;
  std::vector<std::vector<StudentId>> college_priorities;
};

// Complete rankings on both sides, drawn independently from Mallows models
// around the identity reference orders.
inline PreferenceProfile gen_preferences(const GenConfig& cfg, SplitRng& rng) {
  std::vector<int> college_ref(cfg.n_colleges);
  std::iota(college_ref.begin(), college_ref.end(), 0);
  std::vector<int> student_ref(cfg.n_students);
  std::iota(student_ref.begin(), student_ref.end(), 0);

  PreferenceProfile profile;
  profile.student_prefs.reserve(cfg.n_students);
  for (int s = 0; s < cfg.n_students; ++s)
    profile.student_prefs.push_back(mallows_sample(college_ref, cfg.phi_s, rng));
  profile.college_priorities.reserve(cfg.n_colleges);
  for (int c = 0; c < cfg.n_colleges; ++c)
    profile.college_priorities.push_back(
        mallows_sample(student_ref, cfg.phi_c, rng));
  return profile;
}

// Total capacity target shared by the fixed and normal methods.
inline int total_capacity_target(const GenConfig& cfg) {
  return std::max(cfg.n_colleges,
                  static_cast<int>(std::floor(cfg.rho_c * cfg.n_students)));
}

inline std::vector<int> gen_capacities(const GenConfig& cfg, SplitRng& rng) {
  std::vector<int> q(cfg.n_colleges);
  switch (cfg.capacity_method) {
    case CapacityMethod::fixed: {
      int value = std::max(
          1, static_cast<int>(std::floor(cfg.rho_c * cfg.n_students /
                                         cfg.n_colleges)));
      std::fill(q.begin(), q.end(), value);
      break;
    }
    case CapacityMethod::uniform: {
      require(cfg.uniform_lo <= cfg.uniform_hi, Errc::invalid_range,
              "uniform capacity range is empty");
      for (int& v : q) v = rng.uniform_int(cfg.uniform_lo, cfg.uniform_hi);
      break;
    }
    case CapacityMethod::normal: {
      const int total = total_capacity_target(cfg);
      const double mu = static_cast<double>(total) / cfg.n_colleges;
      const double sigma = mu * cfg.std_ratio;
      long long sum = 0;
      for (int& v : q) {
        double draw = std::max(1.0, rng.normal(mu, sigma));
        v = static_cast<int>(std::llround(draw));
        sum += v;
      }
      // Rounding drift is repaired one unit at a time on randomly selected
      // colleges, never dropping any college below capacity one.
      while (sum != total) {
        int c = static_cast<int>(rng.uniform_below(cfg.n_colleges));
        if (sum < total) {
          ++q[c];
          ++sum;
        } else if (q[c] >= 2) {
          --q[c];
          --sum;
        }
      }
      break;
    }
  }
  return q;
}

struct RegionLayout {
  std::vector<int> region;  // per-college region index, 0-based
  std::vector<int> caps;    // per-region aggregate cap
};

// Round-robin region assignment; each region's cap is a fixed fraction of
// the summed capacity of its colleges.
inline RegionLayout assign_regions(const GenConfig& cfg,
                                   const std::vector<int>& capacities) {
  int n_regions = std::max(
      1, static_cast<int>(std::floor(cfg.region_ratio * cfg.n_students)));
  RegionLayout layout;
  layout.region.resize(cfg.n_colleges);
  std::vector<long long> q_sum(n_regions, 0);
  for (int c = 0; c < cfg.n_colleges; ++c) {
    layout.region[c] = c % n_regions;
    q_sum[c % n_regions] += capacities[c];
  }
  layout.caps.resize(n_regions);
  for (int r = 0; r < n_regions; ++r)
    layout.caps[r] = static_cast<int>(
        std::floor(cfg.region_capacity_ratio * static_cast<double>(q_sum[r])));
  return layout;
}

// Deterministic function of (config, stream): stream 0 for standalone
// generation, stream t for trial t of an experiment. Draw order: student
// preferences by id, college priorities by id, then capacities.
inline Instance generate_instance(const GenConfig& cfg,
                                  std::uint64_t stream = 0) {
  validate_config(cfg);
  SplitRng rng(cfg.seed, stream);
  PreferenceProfile profile = gen_preferences(cfg, rng);
  std::vector<int> q = gen_capacities(cfg, rng);
  RegionLayout regions = assign_regions(cfg, q);

  InstanceData data;
  data.n_students = cfg.n_students;
  data.n_colleges = cfg.n_colleges;
  data.student_prefs = std::move(profile.student_prefs);
  data.college_priorities = std::move(profile.college_priorities);
  data.feasibility = conjoin({ConstraintSpec{Capacities{std::move(q)}},
                              ConstraintSpec{RegionalCaps{
                                  std::move(regions.region),
                                  std::move(regions.caps)}}});
  return Instance::validate(std::move(data));
}

}  // namespace hmatch
