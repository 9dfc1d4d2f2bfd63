#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hmatch/core.hpp"
#include "hmatch/properties.hpp"

namespace hmatch {

// Per-college cutoff scores in 1..|S|+1. Initialized to |S|+1 (the imaginary
// top student) and never increasing during a run.
using CutoffVector = std::vector<Score>;

struct TraceEvent {
  enum class Kind {
    examine_college,  // a college starts a scan
    propose,          // DA variant only: college proposes to a student
    assign,           // student reassigned: previous -> college
    update_cutoff,    // college's cutoff recomputed after its scan
    reset_stack,      // stack cleared after a successful reassignment
  };
  Kind kind;
  CollegeId college = -1;
  StudentId student = -1;
  CollegeId previous = kUnmatched;  // assign: the student's prior seat
  Score cutoff_before = 0;          // update_cutoff
  Score cutoff_after = 0;           // update_cutoff
};

// Replaying the assign events from an empty matching reproduces the output.
using AlgoTrace = std::vector<TraceEvent>;

struct AlgoResult {
  Matching matching;
  CutoffVector cutoffs;
  AlgoTrace trace;
  long long oracle_queries = 0;
};

// Hard ceiling on feasibility queries per run: every reassignment strictly
// improves one student (at most |S|*|C| total), at most |C| scans happen
// between reassignments, and a scan queries the oracle at most once per
// student, so queries <= (|S||C| + 1) * |C| * |S| <= 2 * |S|^2 * |C|^2.
inline constexpr long long kOracleQueryCeilingFactor = 2;

inline long long oracle_query_ceiling(const Instance& inst) {
  long long n = inst.n_students();
  long long m = inst.n_colleges();
  return kOracleQueryCeilingFactor * n * n * m * m;
}

namespace detail {

// k-admissibility against a precomputed load vector (edited in place and
// restored). Counts only envy toward s under Y' = (Y \ Y_s) u {(s, c)};
// every other student's received envy is unchanged by the move.
inline bool k_admissible_with_load(const Instance& inst, const Matching& y,
                                   LoadVector& load, StudentId s, CollegeId c,
                                   int k) {
  if (!move_feasible(inst, load, y.college_of(s), c)) return false;
  int enviers = 0;
  for (StudentId other : inst.priorities(c)) {
    if (inst.rank_of(c, other) >= inst.rank_of(c, s)) break;
    if (strictly_prefers(inst, other, c, y.college_of(other)))
      if (++enviers > k) return false;
  }
  return true;
}

}  // namespace detail

// Whether moving s to c keeps the matching feasible and leaves s envied by
// at most k students.
inline bool k_admissible(const Instance& inst, const Matching& y, StudentId s,
                         CollegeId c, int k) {
  require(k >= 0, Errc::invalid_config, "k must be nonnegative");
  LoadVector load = load_vector(inst, y);
  return detail::k_admissible_with_load(inst, y, load, s, c, k);
}

// Cutoff score of c under Y, evaluated from the definition: the score of the
// deepest student such that everyone with weakly higher priority at c is
// assigned to a seat they weakly prefer to c. |S|+1 when even the
// top-priority student is not; 1 when every student is.
inline Score compute_cutoff(const Instance& inst, const Matching& y,
                            CollegeId c) {
  const int n = inst.n_students();
  int satisfied = 0;
  for (StudentId t : inst.priorities(c)) {
    if (!weakly_prefers(inst, t, y.college_of(t), c)) break;
    ++satisfied;
  }
  return satisfied == 0 ? n + 1 : n - satisfied + 1;
}

// Incremental cutoff update: scan students strictly below the current cutoff
// in descending score, decrementing while they weakly prefer their own seat
// to c (a student seated at c itself counts as weakly preferring), stopping
// at the first who strictly prefers c. Equals compute_cutoff whenever the
// previous cutoff was valid and students have only weakly improved since.
inline Score update_cutoff(const Instance& inst, const Matching& y,
                           CollegeId c, Score current) {
  const int n = inst.n_students();
  Score b = current;
  for (int rank = n + 2 - current; rank <= n; ++rank) {
    StudentId s = inst.priorities(c)[rank - 1];
    if (weakly_prefers(inst, s, y.college_of(s), c)) {
      if (--b == 1) return b;
    } else {
      return b;
    }
  }
  return b;  // reached only when the scan range is empty (current == 1)
}

namespace detail {

inline void check_k(const Instance& inst, int k) {
  (void)inst;
  require(k >= 0, Errc::invalid_config, "k must be nonnegative");
}

// Shared state for the cutoff/DA loops.
struct RunState {
  Matching y;
  CutoffVector cutoffs;
  LoadVector load;
  std::vector<char> stacked;
  int n_stacked = 0;

  explicit RunState(const Instance& inst)
      : y(inst.n_students()),
        cutoffs(inst.n_colleges(), inst.n_students() + 1),
        load(inst.n_colleges(), 0),
        stacked(inst.n_colleges(), 0) {}

  CollegeId next_college() const {
    for (CollegeId c = 0; c < static_cast<CollegeId>(stacked.size()); ++c)
      if (!stacked[c]) return c;
    return -1;
  }

  void reset_stack() {
    std::fill(stacked.begin(), stacked.end(), 0);
    n_stacked = 0;
  }

  void push(CollegeId c) {
    stacked[c] = 1;
    ++n_stacked;
  }

  void apply_move(StudentId s, CollegeId c) {
    CollegeId prev = y.college_of(s);
    if (prev != kUnmatched) --load[prev];
    ++load[c];
    y.assign(s, c);
  }
};

}  // namespace detail

// k-admissible cutoff algorithm. Repeatedly scans the lowest-indexed
// unstacked college over the students below its cutoff, reassigning any
// student who strictly prefers the college and is k-admissible; each
// reassignment resets the stack. After a college's scan its cutoff is
// updated and the college is stacked (pseudocode order: the college is
// pushed even when its own scan caused a reset). Terminates with an ER-k and
// NW-k matching.
inline AlgoResult k_cutoff(const Instance& inst, int k,
                           bool record_trace = true) {
  detail::check_k(inst, k);
  const int n = inst.n_students();
  const int m = inst.n_colleges();
  detail::RunState st(inst);
  AlgoResult result;
  const long long queries_before = inst.oracle().query_count();

  while (st.n_stacked < m) {
    CollegeId c = st.next_college();
    if (record_trace)
      result.trace.push_back(
          {TraceEvent::Kind::examine_college, c, -1, kUnmatched, 0, 0});

    // The scan range is fixed by the cutoff at scan start; reassignments
    // mid-scan do not restart it.
    const Score b = st.cutoffs[c];
    for (int rank = n + 2 - b; rank <= n; ++rank) {
      StudentId s = inst.priorities(c)[rank - 1];
      if (!strictly_prefers(inst, s, c, st.y.college_of(s))) continue;
      if (!detail::k_admissible_with_load(inst, st.y, st.load, s, c, k))
        continue;
      CollegeId prev = st.y.college_of(s);
      st.apply_move(s, c);
      st.reset_stack();
      if (record_trace) {
        result.trace.push_back(
            {TraceEvent::Kind::assign, c, s, prev, 0, 0});
        result.trace.push_back(
            {TraceEvent::Kind::reset_stack, c, -1, kUnmatched, 0, 0});
      }
    }

    Score updated = update_cutoff(inst, st.y, c, st.cutoffs[c]);
    if (record_trace)
      result.trace.push_back({TraceEvent::Kind::update_cutoff, c, -1,
                              kUnmatched, st.cutoffs[c], updated});
    st.cutoffs[c] = updated;
    st.push(c);
  }

  result.matching = std::move(st.y);
  result.cutoffs = std::move(st.cutoffs);
  result.oracle_queries = inst.oracle().query_count() - queries_before;
  return result;
}

// k-admissible college-proposing deferred acceptance. Same skeleton as
// k_cutoff, but written as Algorithm college-proposal/student-acceptance:
// the college proposes to every k-admissible student below its cutoff and
// the student accepts exactly when she strictly prefers the proposer.
// Produces the identical matching and cutoff vector; kept as a separate
// implementation so the equivalence tests compare two real routes.
inline AlgoResult k_spda(const Instance& inst, int k,
                         bool record_trace = true) {
  detail::check_k(inst, k);
  const int n = inst.n_students();
  const int m = inst.n_colleges();
  detail::RunState st(inst);
  AlgoResult result;
  const long long queries_before = inst.oracle().query_count();

  while (st.n_stacked < m) {
    CollegeId c = st.next_college();
    if (record_trace)
      result.trace.push_back(
          {TraceEvent::Kind::examine_college, c, -1, kUnmatched, 0, 0});

    const Score b = st.cutoffs[c];
    for (int rank = n + 2 - b; rank <= n; ++rank) {
      StudentId s = inst.priorities(c)[rank - 1];
      if (!detail::k_admissible_with_load(inst, st.y, st.load, s, c, k))
        continue;
      if (record_trace)
        result.trace.push_back(
            {TraceEvent::Kind::propose, c, s, kUnmatched, 0, 0});
      if (!strictly_prefers(inst, s, c, st.y.college_of(s))) continue;
      CollegeId prev = st.y.college_of(s);
      st.apply_move(s, c);
      st.reset_stack();
      if (record_trace) {
        result.trace.push_back({TraceEvent::Kind::assign, c, s, prev, 0, 0});
        result.trace.push_back(
            {TraceEvent::Kind::reset_stack, c, -1, kUnmatched, 0, 0});
      }
    }

    Score updated = update_cutoff(inst, st.y, c, st.cutoffs[c]);
    if (record_trace)
      result.trace.push_back({TraceEvent::Kind::update_cutoff, c, -1,
                              kUnmatched, st.cutoffs[c], updated});
    st.cutoffs[c] = updated;
    st.push(c);
  }

  result.matching = std::move(st.y);
  result.cutoffs = std::move(st.cutoffs);
  result.oracle_queries = inst.oracle().query_count() - queries_before;
  return result;
}

// Picks one of the candidate (student, college) pairs; candidates arrive in
// (college index, priority rank) order.
using PairSelector = std::function<std::pair<StudentId, CollegeId>(
    const std::vector<std::pair<StudentId, CollegeId>>&)>;

// Generic ER-k and NW-k construction: grow from the empty matching, each
// step granting some claim whose fulfilment keeps the matching ER-k, until
// no such pair remains. Since moves only add envy toward the moved student,
// "Y' stays ER-k" reduces to the k-admissibility of the move.
inline Matching construct_er_nw(const Instance& inst, int k,
                                const PairSelector& select = nullptr) {
  detail::check_k(inst, k);
  Matching y(inst.n_students());
  LoadVector load(inst.n_colleges(), 0);
  std::vector<std::pair<StudentId, CollegeId>> candidates;

  for (;;) {
    candidates.clear();
    for (CollegeId c = 0; c < inst.n_colleges(); ++c) {
      for (StudentId s : inst.priorities(c)) {
        if (!strictly_prefers(inst, s, c, y.college_of(s))) continue;
        if (detail::k_admissible_with_load(inst, y, load, s, c, k))
          candidates.emplace_back(s, c);
      }
    }
    if (candidates.empty()) break;
    auto [s, c] = select ? select(candidates) : candidates.front();
    CollegeId prev = y.college_of(s);
    if (prev != kUnmatched) --load[prev];
    ++load[c];
    y.assign(s, c);
  }
  return y;
}

// Rebuilds the matching sequence encoded by a trace; index i of the result
// is the matching after the first i events. Used by invariant tests.
inline std::vector<Matching> replay_trace(const Instance& inst,
                                          const AlgoTrace& trace) {
  std::vector<Matching> states;
  Matching y(inst.n_students());
  states.push_back(y);
  for (const TraceEvent& ev : trace) {
    if (ev.kind == TraceEvent::Kind::assign) y.assign(ev.student, ev.college);
    states.push_back(y);
  }
  return states;
}

}  // namespace hmatch
