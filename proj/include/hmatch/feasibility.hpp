#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hmatch/error.hpp"
#include "hmatch/rng.hpp"

namespace hmatch {

// Per-college occupancy counts. Feasibility of a matching depends only on
// this vector, never on which students occupy the seats.
using LoadVector = std::vector<int>;

// Box entries of this value mean "no finite bound declared".
inline constexpr int kUnboundedLoad = std::numeric_limits<int>::max();

// ---------------------------------------------------------------------------
// Constraint families. Every family below is downward closed by construction,
// so any spec (and any conjunction of specs) passes the heredity verifier.
// ---------------------------------------------------------------------------

struct Capacities {
  std::vector<int> q;  // per-college maximum
};

struct RegionalCaps {
  std::vector<int> region;  // per-college region index, 0-based
  std::vector<int> caps;    // per-region cap on the summed load
};

struct Multidimensional {
  std::vector<std::vector<int>> demand;  // demand[c][d] per admitted student
  std::vector<int> limits;               // limit per dimension d
};

// Downward closure of a set of maximal vectors (an antichain); membership is
// "<= some maximal vector". Canonical form of an arbitrary finite
// downward-closed family.
struct Explicit {
  std::vector<LoadVector> maximal;
};

struct ConstraintSpec;

struct Conjunction {
  std::vector<ConstraintSpec> parts;  // empty conjunction: everything feasible
};

struct ConstraintSpec {
  std::variant<Capacities, RegionalCaps, Multidimensional, Explicit,
               Conjunction>
      family;
};

inline ConstraintSpec conjoin(std::vector<ConstraintSpec> parts) {
  return ConstraintSpec{Conjunction{std::move(parts)}};
}

// Drops duplicates and dominated vectors, keeping only maximal elements.
inline std::vector<LoadVector> antichain(std::vector<LoadVector> points) {
  auto dominated = [](const LoadVector& a, const LoadVector& b) {
    // a <= b coordinatewise and a != b
    bool le = true, eq = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) le = false;
      if (a[i] != b[i]) eq = false;
    }
    return le && !eq;
  };
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<LoadVector> keep;
  for (const auto& p : points) {
    bool dom = false;
    for (const auto& q : points) {
      if (&p != &q && dominated(p, q)) { dom = true; break; }
    }
    if (!dom) keep.push_back(p);
  }
  return keep;
}

namespace detail {

inline void validate_spec(const ConstraintSpec& spec, int m);

inline void validate_family(const Capacities& f, int m) {
  require(static_cast<int>(f.q.size()) == m, Errc::dimension_mismatch,
          "capacities vector has wrong dimension");
  for (int v : f.q)
    require(v >= 0, Errc::invalid_config, "negative capacity");
}

inline void validate_family(const RegionalCaps& f, int m) {
  require(static_cast<int>(f.region.size()) == m, Errc::dimension_mismatch,
          "region assignment has wrong dimension");
  for (int r : f.region)
    require(r >= 0 && r < static_cast<int>(f.caps.size()),
            Errc::invalid_config, "region index out of range");
  for (int v : f.caps)
    require(v >= 0, Errc::invalid_config, "negative regional cap");
}

inline void validate_family(const Multidimensional& f, int m) {
  require(static_cast<int>(f.demand.size()) == m, Errc::dimension_mismatch,
          "demand matrix has wrong dimension");
  for (const auto& row : f.demand) {
    require(row.size() == f.limits.size(), Errc::dimension_mismatch,
            "demand row length differs from limit count");
    for (int v : row)
      require(v >= 0, Errc::invalid_config, "negative resource demand");
  }
  for (int v : f.limits)
    require(v >= 0, Errc::invalid_config, "negative resource limit");
}

inline void validate_family(const Explicit& f, int m) {
  for (const auto& p : f.maximal) {
    require(static_cast<int>(p.size()) == m, Errc::dimension_mismatch,
            "explicit maximal vector has wrong dimension");
    for (int v : p)
      require(v >= 0, Errc::invalid_config, "negative load in maximal vector");
  }
}

inline void validate_family(const Conjunction& f, int m) {
  for (const auto& part : f.parts) validate_spec(part, m);
}

inline void validate_spec(const ConstraintSpec& spec, int m) {
  std::visit([m](const auto& fam) { validate_family(fam, m); }, spec.family);
}

inline bool eval_spec(const ConstraintSpec& spec, const LoadVector& nu);

inline bool eval_family(const Capacities& f, const LoadVector& nu) {
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (nu[i] > f.q[i]) return false;
  return true;
}

inline bool eval_family(const RegionalCaps& f, const LoadVector& nu) {
  // Regions are few; a stack-free two-pass sum keeps a query allocation-free.
  for (std::size_t r = 0; r < f.caps.size(); ++r) {
    long long sum = 0;
    for (std::size_t c = 0; c < nu.size(); ++c)
      if (f.region[c] == static_cast<int>(r)) sum += nu[c];
    if (sum > f.caps[r]) return false;
  }
  return true;
}

inline bool eval_family(const Multidimensional& f, const LoadVector& nu) {
  for (std::size_t d = 0; d < f.limits.size(); ++d) {
    long long used = 0;
    for (std::size_t c = 0; c < nu.size(); ++c)
      used += static_cast<long long>(nu[c]) * f.demand[c][d];
    if (used > f.limits[d]) return false;
  }
  return true;
}

inline bool eval_family(const Explicit& f, const LoadVector& nu) {
  for (const auto& p : f.maximal) {
    bool le = true;
    for (std::size_t i = 0; i < nu.size(); ++i)
      if (nu[i] > p[i]) { le = false; break; }
    if (le) return true;
  }
  return false;
}

inline bool eval_family(const Conjunction& f, const LoadVector& nu) {
  for (const auto& part : f.parts)
    if (!eval_spec(part, nu)) return false;
  return true;
}

inline bool eval_spec(const ConstraintSpec& spec, const LoadVector& nu) {
  return std::visit([&nu](const auto& fam) { return eval_family(fam, nu); },
                    spec.family);
}

inline LoadVector spec_box(const ConstraintSpec& spec, int m);

inline LoadVector family_box(const Capacities& f, int) { return f.q; }

inline LoadVector family_box(const RegionalCaps& f, int m) {
  LoadVector box(m);
  for (int c = 0; c < m; ++c) box[c] = f.caps[f.region[c]];
  return box;
}

inline LoadVector family_box(const Multidimensional& f, int m) {
  LoadVector box(m, kUnboundedLoad);
  for (int c = 0; c < m; ++c) {
    for (std::size_t d = 0; d < f.limits.size(); ++d) {
      if (f.demand[c][d] > 0)
        box[c] = std::min(box[c], f.limits[d] / f.demand[c][d]);
    }
  }
  return box;
}

inline LoadVector family_box(const Explicit& f, int m) {
  LoadVector box(m, 0);
  for (const auto& p : f.maximal)
    for (int c = 0; c < m; ++c) box[c] = std::max(box[c], p[c]);
  return box;
}

inline LoadVector family_box(const Conjunction& f, int m) {
  LoadVector box(m, kUnboundedLoad);
  for (const auto& part : f.parts) {
    LoadVector b = spec_box(part, m);
    for (int c = 0; c < m; ++c) box[c] = std::min(box[c], b[c]);
  }
  return box;
}

inline LoadVector spec_box(const ConstraintSpec& spec, int m) {
  return std::visit([m](const auto& fam) { return family_box(fam, m); },
                    spec.family);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FeasibilityOracle: pure query interface (load vector in, verdict out) plus
// the declared evaluation box used by exhaustive tests. One query costs
// O(m + #constraints); nothing in the library assumes more structure than
// downward closure.
// ---------------------------------------------------------------------------
class FeasibilityOracle {
 public:
  FeasibilityOracle() = default;

  FeasibilityOracle(int n_colleges, LoadVector declared_box,
                    std::function<bool(const LoadVector&)> predicate) {
    auto impl = std::make_shared<Impl>();
    impl->m = n_colleges;
    impl->box = std::move(declared_box);
    impl->predicate = std::move(predicate);
    impl_ = std::move(impl);
  }

  static FeasibilityOracle from_spec(const ConstraintSpec& spec,
                                     int n_colleges) {
    detail::validate_spec(spec, n_colleges);
    return FeasibilityOracle(
        n_colleges, detail::spec_box(spec, n_colleges),
        [spec](const LoadVector& nu) { return detail::eval_spec(spec, nu); });
  }

  bool feasible(const LoadVector& nu) const {
    require(static_cast<int>(nu.size()) == impl_->m, Errc::dimension_mismatch,
            "load vector has " + std::to_string(nu.size()) +
                " entries, oracle expects " + std::to_string(impl_->m));
    impl_->queries.fetch_add(1, std::memory_order_relaxed);
    return impl_->predicate(nu);
  }

  int n_colleges() const { return impl_->m; }

  const LoadVector& box() const { return impl_->box; }

  LoadVector box_clamped(int cap) const {
    LoadVector b = impl_->box;
    for (int& v : b) v = std::min(v, cap);
    return b;
  }

  // Query counting backs the polynomial-runtime assertions. Relaxed atomic:
  // counts stay valid when an instance is shared across workers, though each
  // experiment trial owns its own oracle anyway.
  long long query_count() const {
    return impl_->queries.load(std::memory_order_relaxed);
  }
  void reset_query_count() const {
    impl_->queries.store(0, std::memory_order_relaxed);
  }

 private:
  struct Impl {
    int m = 0;
    LoadVector box;
    std::function<bool(const LoadVector&)> predicate;
    mutable std::atomic<long long> queries{0};
  };
  std::shared_ptr<const Impl> impl_;
};

inline bool is_feasible(const FeasibilityOracle& oracle, const LoadVector& nu) {
  return oracle.feasible(nu);
}

// ---------------------------------------------------------------------------
// Heredity verification by exhaustive enumeration of a box.
// ---------------------------------------------------------------------------

struct HeredityViolation {
  // feasible_point is feasible while infeasible_point < feasible_point is
  // not. For a clause-1 violation (zero vector infeasible) infeasible_point
  // is the zero vector; feasible_point is empty if the box holds no feasible
  // vector at all.
  LoadVector feasible_point;
  LoadVector infeasible_point;
};

namespace detail {

inline double box_size(const LoadVector& box) {
  double points = 1.0;
  for (int b : box) points *= static_cast<double>(b) + 1.0;
  return points;
}

// Advances nu through the box in lexicographic order; false when exhausted.
inline bool next_point(LoadVector& nu, const LoadVector& box) {
  for (int i = static_cast<int>(nu.size()) - 1; i >= 0; --i) {
    if (nu[i] < box[i]) {
      ++nu[i];
      std::fill(nu.begin() + i + 1, nu.end(), 0);
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Checks both heredity clauses on every point of the box: the zero vector is
// feasible, and no feasible point has an infeasible point below it. Clause 2
// only needs the cover pairs (nu vs nu - e_i); transitivity gives the rest.
inline std::optional<HeredityViolation> find_heredity_violation(
    const FeasibilityOracle& oracle, const LoadVector& box) {
  require(static_cast<int>(box.size()) == oracle.n_colleges(),
          Errc::dimension_mismatch, "box dimension differs from oracle");
  require(detail::box_size(box) <= 1e7, Errc::box_too_large,
          "box holds more than 1e7 points");

  LoadVector zero(box.size(), 0);
  if (!oracle.feasible(zero)) {
    LoadVector probe = zero;
    do {
      if (oracle.feasible(probe))
        return HeredityViolation{probe, zero};
    } while (detail::next_point(probe, box));
    return HeredityViolation{LoadVector{}, zero};
  }

  LoadVector nu = zero;
  LoadVector below;
  do {
    if (!oracle.feasible(nu)) continue;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (nu[i] == 0) continue;
      below = nu;
      --below[i];
      if (!oracle.feasible(below)) return HeredityViolation{nu, below};
    }
  } while (detail::next_point(nu, box));
  return std::nullopt;
}

inline bool verify_hereditary(const FeasibilityOracle& oracle,
                              const LoadVector& box) {
  return !find_heredity_violation(oracle, box).has_value();
}

// Samples a random antichain of maximal vectors inside the box. The induced
// downward closure is hereditary by construction.
inline ConstraintSpec random_hereditary_oracle(SplitRng& rng, int m,
                                               const LoadVector& box) {
  require(m >= 1, Errc::invalid_config, "need at least one college");
  require(static_cast<int>(box.size()) == m, Errc::dimension_mismatch,
          "box dimension differs from m");
  int n_points = 1 + static_cast<int>(rng.uniform_below(3));
  std::vector<LoadVector> points;
  points.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    LoadVector p(m);
    for (int c = 0; c < m; ++c)
      p[c] = static_cast<int>(rng.uniform_below(box[c] + 1));
    points.push_back(std::move(p));
  }
  return ConstraintSpec{Explicit{antichain(std::move(points))}};
}

}  // namespace hmatch
