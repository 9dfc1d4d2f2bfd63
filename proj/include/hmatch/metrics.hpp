#pragma once

#include <algorithm>
#include <vector>

#include "hmatch/properties.hpp"

namespace hmatch {

// The five outcome measures reported per matching. maximum_objections is
// the largest objection count over all claims, with |S| as the sentinel
// when no claim exists (no pair is available to take the maximum over).
struct MetricsRecord {
  double avg_envy_received = 0.0;
  int max_envy_received = 0;
  int maximum_objections = 0;
  long long total_envy = 0;
  int total_claims = 0;
};

inline MetricsRecord compute_metrics(const Instance& inst, const Matching& y,
                                     const std::vector<Claim>& claims) {
  MetricsRecord rec;
  for (StudentId s = 0; s < inst.n_students(); ++s) {
    int received =
        detail::envied_by_count(inst, y, s, inst.n_students());
    rec.total_envy += received;
    rec.max_envy_received = std::max(rec.max_envy_received, received);
  }
  // Integer tally first, one division last; no floating accumulation.
  rec.avg_envy_received =
      static_cast<double>(rec.total_envy) / inst.n_students();

  rec.total_claims = static_cast<int>(claims.size());
  if (claims.empty()) {
    rec.maximum_objections = inst.n_students();
  } else {
    for (const Claim& claim : claims)
      rec.maximum_objections = std::max(
          rec.maximum_objections, static_cast<int>(claim.objectors.size()));
  }
  return rec;
}

inline MetricsRecord compute_metrics(const Instance& inst, const Matching& y) {
  return compute_metrics(inst, y, claims_of(inst, y));
}

}  // namespace hmatch
