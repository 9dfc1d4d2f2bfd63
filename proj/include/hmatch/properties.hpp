#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hmatch/core.hpp"

namespace hmatch {

// One justified-envy relation: `envier` prefers `at_college` to her own
// assignment while `at_college` admits the lower-priority `envied`.
struct EnvyEdge {
  StudentId envier;
  StudentId envied;
  CollegeId at_college;
};

// A feasible, strictly improving reassignment of `claimant` to `college`,
// together with every student whose own move there is blocked by feasibility
// (the objectors). "Empty seat" is implemented purely as the feasibility
// condition; under general constraints there is no literal vacancy to track.
struct Claim {
  StudentId claimant;
  CollegeId college;
  std::vector<StudentId> objectors;
};

namespace detail {

// Feasibility of (Y \ Y_s) u {(s, c)} via an O(1) edit of the load vector.
inline bool move_feasible(const Instance& inst, LoadVector& load,
                          CollegeId from, CollegeId to) {
  if (from != kUnmatched) --load[from];
  ++load[to];
  bool ok = inst.oracle().feasible(load);
  --load[to];
  if (from != kUnmatched) ++load[from];
  return ok;
}

}  // namespace detail

// Ev(Y, s): the students whom s envies under Y.
inline std::vector<StudentId> envy_set(const Instance& inst, const Matching& y,
                                       StudentId s) {
  std::vector<StudentId> out;
  for (StudentId other = 0; other < inst.n_students(); ++other) {
    if (other == s || !y.matched(other)) continue;
    CollegeId c = y.college_of(other);
    if (strictly_prefers(inst, s, c, y.college_of(s)) &&
        inst.rank_of(c, s) < inst.rank_of(c, other))
      out.push_back(other);
  }
  return out;
}

// Evd(Y, s): the students who envy s under Y; empty when s is unmatched.
inline std::vector<StudentId> envied_by_set(const Instance& inst,
                                            const Matching& y, StudentId s) {
  std::vector<StudentId> out;
  if (!y.matched(s)) return out;
  CollegeId c = y.college_of(s);
  for (StudentId other = 0; other < inst.n_students(); ++other) {
    if (other == s) continue;
    if (strictly_prefers(inst, other, c, y.college_of(other)) &&
        inst.rank_of(c, other) < inst.rank_of(c, s))
      out.push_back(other);
  }
  return out;
}

inline std::vector<EnvyEdge> envy_edges(const Instance& inst,
                                        const Matching& y) {
  std::vector<EnvyEdge> out;
  for (StudentId s = 0; s < inst.n_students(); ++s) {
    if (!y.matched(s)) continue;
    CollegeId c = y.college_of(s);
    for (StudentId other = 0; other < inst.n_students(); ++other) {
      if (other == s) continue;
      if (strictly_prefers(inst, other, c, y.college_of(other)) &&
          inst.rank_of(c, other) < inst.rank_of(c, s))
        out.push_back(EnvyEdge{other, s, c});
    }
  }
  return out;
}

namespace detail {

// |Evd(Y, s)| with early exit once the count exceeds `cap`.
inline int envied_by_count(const Instance& inst, const Matching& y,
                           StudentId s, int cap) {
  if (!y.matched(s)) return 0;
  CollegeId c = y.college_of(s);
  int count = 0;
  for (StudentId other = 0; other < inst.n_students(); ++other) {
    if (other == s) continue;
    if (strictly_prefers(inst, other, c, y.college_of(other)) &&
        inst.rank_of(c, other) < inst.rank_of(c, s)) {
      if (++count > cap) return count;
    }
  }
  return count;
}

}  // namespace detail

// ER-k: no student is envied by more than k students. ER-0 is fairness.
inline bool is_er_k(const Instance& inst, const Matching& y, int k) {
  require(k >= 0, Errc::invalid_config, "k must be nonnegative");
  for (StudentId s = 0; s < inst.n_students(); ++s)
    if (detail::envied_by_count(inst, y, s, k) > k) return false;
  return true;
}

inline bool is_fair(const Instance& inst, const Matching& y) {
  return is_er_k(inst, y, 0);
}

// EF-k: no student envies more than k students.
inline bool is_ef_k(const Instance& inst, const Matching& y, int k) {
  require(k >= 0, Errc::invalid_config, "k must be nonnegative");
  for (StudentId s = 0; s < inst.n_students(); ++s) {
    int count = 0;
    for (StudentId other = 0; other < inst.n_students(); ++other) {
      if (other == s || !y.matched(other)) continue;
      CollegeId c = y.college_of(other);
      if (strictly_prefers(inst, s, c, y.college_of(s)) &&
          inst.rank_of(c, s) < inst.rank_of(c, other)) {
        if (++count > k) return false;
      }
    }
  }
  return true;
}

// Every claim under Y, with its full objector set. An objector is a
// higher-priority student who prefers the claimed college but cannot
// feasibly be moved there herself; unmatched students may claim and object.
inline std::vector<Claim> claims_of(const Instance& inst, const Matching& y) {
  std::vector<Claim> out;
  LoadVector load = load_vector(inst, y);
  for (StudentId s = 0; s < inst.n_students(); ++s) {
    CollegeId own = y.college_of(s);
    for (CollegeId c : inst.preferences(s)) {
      if (!strictly_prefers(inst, s, c, own)) continue;
      if (!detail::move_feasible(inst, load, own, c)) continue;
      Claim claim{s, c, {}};
      for (StudentId other : inst.priorities(c)) {
        if (inst.rank_of(c, other) >= inst.rank_of(c, s)) break;
        if (!strictly_prefers(inst, other, c, y.college_of(other))) continue;
        if (!detail::move_feasible(inst, load, y.college_of(other), c))
          claim.objectors.push_back(other);
      }
      out.push_back(std::move(claim));
    }
  }
  return out;
}

// NW-k: no claim with at most k objections exists. NW-0 is cut-off
// non-wastefulness, NW-|S| classical non-wastefulness. Standalone scan with
// early exits; claims_of above serves as the independent route in tests.
inline bool is_nw_k(const Instance& inst, const Matching& y, int k) {
  require(k >= 0, Errc::invalid_config, "k must be nonnegative");
  LoadVector load = load_vector(inst, y);
  for (StudentId s = 0; s < inst.n_students(); ++s) {
    CollegeId own = y.college_of(s);
    for (CollegeId c : inst.preferences(s)) {
      if (!strictly_prefers(inst, s, c, own)) continue;
      if (!detail::move_feasible(inst, load, own, c)) continue;
      int objections = 0;
      for (StudentId other : inst.priorities(c)) {
        if (inst.rank_of(c, other) >= inst.rank_of(c, s)) break;
        if (!strictly_prefers(inst, other, c, y.college_of(other))) continue;
        if (!detail::move_feasible(inst, load, y.college_of(other), c))
          if (++objections > k) break;
      }
      if (objections <= k) return false;  // k-legitimate claim found
    }
  }
  return true;
}

inline bool is_cnw(const Instance& inst, const Matching& y) {
  return is_nw_k(inst, y, 0);
}

inline bool is_nonwasteful(const Instance& inst, const Matching& y) {
  return is_nw_k(inst, y, inst.n_students());
}

// Stability = fairness + classical non-wastefulness.
inline bool is_stable(const Instance& inst, const Matching& y) {
  return is_er_k(inst, y, 0) && is_nw_k(inst, y, inst.n_students());
}

// max_s |Evd(Y, s)|: the smallest k for which Y satisfies ER-k.
inline int min_er_index(const Instance& inst, const Matching& y) {
  int worst = 0;
  for (StudentId s = 0; s < inst.n_students(); ++s)
    worst = std::max(
        worst, detail::envied_by_count(inst, y, s, inst.n_students()));
  return worst;
}

namespace detail {

inline double enumeration_size(const Instance& inst) {
  double size = 1.0;
  for (StudentId s = 0; s < inst.n_students(); ++s)
    size *= static_cast<double>(inst.preferences(s).size()) + 1.0;
  return size;
}

// Depth-first over students in id order, assigning each an acceptable
// college or nothing. Pruning on infeasible prefixes is sound because
// heredity makes every prefix of a feasible matching feasible.
inline bool enumerate_rec(const Instance& inst, StudentId s, Matching& y,
                          LoadVector& load,
                          const std::function<bool(const Matching&)>& visit) {
  if (s == inst.n_students()) return visit(y);
  if (!enumerate_rec(inst, s + 1, y, load, visit)) return false;  // unmatched
  for (CollegeId c : inst.preferences(s)) {
    ++load[c];
    bool keep = true;
    if (inst.oracle().feasible(load)) {
      y.assign(s, c);
      keep = enumerate_rec(inst, s + 1, y, load, visit);
      y.unassign(s);
    }
    --load[c];
    if (!keep) return false;
  }
  return true;
}

}  // namespace detail

// Visits every feasible matching exactly once (the empty matching included).
// The visitor returns false to stop early. Guarded against blow-up: the
// assignment tree must stay within 1e7 nodes.
inline void for_each_feasible_matching(
    const Instance& inst, const std::function<bool(const Matching&)>& visit) {
  require(detail::enumeration_size(inst) <= 1e7, Errc::instance_too_large,
          "instance too large for exhaustive enumeration");
  LoadVector load(inst.n_colleges(), 0);
  if (!inst.oracle().feasible(load)) return;  // degenerate non-hereditary case
  Matching y(inst.n_students());
  detail::enumerate_rec(inst, 0, y, load, visit);
}

inline std::vector<Matching> enumerate_feasible_matchings(
    const Instance& inst) {
  std::vector<Matching> out;
  for_each_feasible_matching(inst, [&out](const Matching& y) {
    out.push_back(y);
    return true;
  });
  return out;
}

// Brute-force search for a matching that is both ER-er_k and NW-nw_k.
inline std::optional<Matching> exists_matching(const Instance& inst, int er_k,
                                               int nw_k) {
  std::optional<Matching> found;
  for_each_feasible_matching(inst, [&](const Matching& y) {
    if (is_er_k(inst, y, er_k) && is_nw_k(inst, y, nw_k)) {
      found = y;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace hmatch
