#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hmatch/error.hpp"
#include "hmatch/feasibility.hpp"

namespace hmatch {

// Dense 0-based indices internally; all I/O uses the 1-based "s1"/"c1"
// labels. Scores are integers in 1..|S|, with |S|+1 reserved for the
// imaginary top-priority student used by the cutoff machinery.
using StudentId = std::int32_t;
using CollegeId = std::int32_t;
using Score = int;

inline constexpr CollegeId kUnmatched = -1;

inline std::string student_label(StudentId s) {
  return "s" + std::to_string(s + 1);
}
inline std::string college_label(CollegeId c) {
  return "c" + std::to_string(c + 1);
}

namespace detail {
inline int parse_label(std::string_view text, char prefix) {
  if (text.size() < 2 || text[0] != prefix)
    fail(Errc::parse_error, "bad label '" + std::string(text) + "'");
  int value = 0;
  for (char ch : text.substr(1)) {
    if (ch < '0' || ch > '9')
      fail(Errc::parse_error, "bad label '" + std::string(text) + "'");
    value = value * 10 + (ch - '0');
  }
  if (value < 1)
    fail(Errc::parse_error, "label '" + std::string(text) + "' is not 1-based");
  return value - 1;
}
}  // namespace detail

inline StudentId parse_student_label(std::string_view text) {
  return detail::parse_label(text, 's');
}
inline CollegeId parse_college_label(std::string_view text) {
  return detail::parse_label(text, 'c');
}

// A partial assignment of students to colleges; each student holds at most
// one contract by representation.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int n_students)
      : assignment_(n_students, kUnmatched) {}

  int n_students() const { return static_cast<int>(assignment_.size()); }
  CollegeId college_of(StudentId s) const { return assignment_[s]; }
  bool matched(StudentId s) const { return assignment_[s] != kUnmatched; }

  void assign(StudentId s, CollegeId c) { assignment_[s] = c; }
  void unassign(StudentId s) { assignment_[s] = kUnmatched; }

  int matched_count() const {
    return static_cast<int>(std::count_if(
        assignment_.begin(), assignment_.end(),
        [](CollegeId c) { return c != kUnmatched; }));
  }

  bool operator==(const Matching&) const = default;

 private:
  std::vector<CollegeId> assignment_;
};

// Raw instance data before validation.
struct InstanceData {
  int n_students = 0;
  int n_colleges = 0;
  std::vector<std::vector<CollegeId>> student_prefs;
  std::vector<std::vector<StudentId>> college_priorities;
  ConstraintSpec feasibility;
};

// Validated, immutable instance. The contract set X is implicit: (s, c) is an
// available (and acceptable) contract exactly when c appears in s's
// preference list. College priorities are total orders over all students.
// Rank/position tables are precomputed so that comparisons are O(1).
class Instance {
 public:
  static Instance validate(InstanceData data) {
    Instance inst;
    inst.n_ = data.n_students;
    inst.m_ = data.n_colleges;
    require(inst.n_ >= 1 && inst.m_ >= 1, Errc::invalid_config,
            "instance needs at least one student and one college");
    require(static_cast<int>(data.student_prefs.size()) == inst.n_,
            Errc::invalid_config, "preference list count differs from |S|");
    require(static_cast<int>(data.college_priorities.size()) == inst.m_,
            Errc::invalid_config, "priority list count differs from |C|");

    inst.pref_pos_.assign(inst.n_, std::vector<int>(inst.m_, -1));
    for (StudentId s = 0; s < inst.n_; ++s) {
      const auto& prefs = data.student_prefs[s];
      for (std::size_t i = 0; i < prefs.size(); ++i) {
        CollegeId c = prefs[i];
        require(c >= 0 && c < inst.m_, Errc::id_out_of_range,
                "student " + student_label(s) + " lists unknown college");
        require(inst.pref_pos_[s][c] < 0, Errc::duplicate_in_preference,
                "student " + student_label(s) + " lists " + college_label(c) +
                    " twice");
        inst.pref_pos_[s][c] = static_cast<int>(i);
      }
    }

    inst.rank_.assign(inst.m_, std::vector<int>(inst.n_, 0));
    for (CollegeId c = 0; c < inst.m_; ++c) {
      const auto& prio = data.college_priorities[c];
      require(static_cast<int>(prio.size()) == inst.n_,
              Errc::priority_not_permutation,
              college_label(c) + " priority list length differs from |S|");
      for (std::size_t i = 0; i < prio.size(); ++i) {
        StudentId s = prio[i];
        require(s >= 0 && s < inst.n_, Errc::id_out_of_range,
                college_label(c) + " ranks unknown student");
        require(inst.rank_[c][s] == 0, Errc::priority_not_permutation,
                college_label(c) + " ranks " + student_label(s) + " twice");
        inst.rank_[c][s] = static_cast<int>(i) + 1;  // 1-based rank
      }
    }

    inst.prefs_ = std::move(data.student_prefs);
    inst.prio_ = std::move(data.college_priorities);
    inst.spec_ = std::move(data.feasibility);
    inst.oracle_ = FeasibilityOracle::from_spec(inst.spec_, inst.m_);
    return inst;
  }

  int n_students() const { return n_; }
  int n_colleges() const { return m_; }

  const std::vector<CollegeId>& preferences(StudentId s) const {
    return prefs_[s];
  }
  const std::vector<StudentId>& priorities(CollegeId c) const {
    return prio_[c];
  }
  const ConstraintSpec& feasibility_spec() const { return spec_; }
  const FeasibilityOracle& oracle() const { return oracle_; }

  bool lists(StudentId s, CollegeId c) const { return pref_pos_[s][c] >= 0; }

  // 1-based position of s in c's priority order.
  int rank_of(CollegeId c, StudentId s) const { return rank_[c][s]; }

  // Position of an option in s's preference scale, smaller is better:
  // listed colleges come first in list order, then unmatched, then any
  // unlisted college.
  int option_rank(StudentId s, CollegeId option) const {
    const int listed = static_cast<int>(prefs_[s].size());
    if (option == kUnmatched) return listed;
    int pos = pref_pos_[s][option];
    return pos >= 0 ? pos : listed + 1;
  }

 private:
  Instance() = default;

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<CollegeId>> prefs_;
  std::vector<std::vector<StudentId>> prio_;
  std::vector<std::vector<int>> rank_;      // [c][s], 1-based
  std::vector<std::vector<int>> pref_pos_;  // [s][c], -1 when unlisted
  ConstraintSpec spec_;
  FeasibilityOracle oracle_;
};

inline Instance validate_instance(InstanceData data) {
  return Instance::validate(std::move(data));
}

// score_c(s) = |S| - rank_c(s) + 1; a bijection onto 1..|S| per college.
inline Score score_of(const Instance& inst, CollegeId c, StudentId s) {
  return inst.n_students() - inst.rank_of(c, s) + 1;
}

enum class Preference { better, equal, worse };

// Compares two options (college id or kUnmatched) under s's preferences.
inline Preference prefers(const Instance& inst, StudentId s, CollegeId a,
                          CollegeId b) {
  int ra = inst.option_rank(s, a);
  int rb = inst.option_rank(s, b);
  if (ra < rb) return Preference::better;
  if (ra > rb) return Preference::worse;
  return Preference::equal;
}

inline bool strictly_prefers(const Instance& inst, StudentId s, CollegeId a,
                             CollegeId b) {
  return inst.option_rank(s, a) < inst.option_rank(s, b);
}

inline bool weakly_prefers(const Instance& inst, StudentId s, CollegeId a,
                           CollegeId b) {
  return inst.option_rank(s, a) <= inst.option_rank(s, b);
}

inline LoadVector load_vector(const Instance& inst, const Matching& y) {
  LoadVector nu(inst.n_colleges(), 0);
  for (StudentId s = 0; s < inst.n_students(); ++s)
    if (y.matched(s)) ++nu[y.college_of(s)];
  return nu;
}

inline bool matching_feasible(const Instance& inst, const Matching& y) {
  return inst.oracle().feasible(load_vector(inst, y));
}

// Structural check used when a matching arrives from outside: sizes must
// agree and every assigned college must be on the student's list.
inline void validate_matching(const Instance& inst, const Matching& y) {
  require(y.n_students() == inst.n_students(), Errc::inconsistent,
          "matching covers a different student set");
  for (StudentId s = 0; s < inst.n_students(); ++s) {
    CollegeId c = y.college_of(s);
    if (c == kUnmatched) continue;
    require(c >= 0 && c < inst.n_colleges(), Errc::inconsistent,
            student_label(s) + " assigned to unknown college");
    require(inst.lists(s, c), Errc::inconsistent,
            student_label(s) + " assigned to unlisted college " +
                college_label(c));
  }
}

}  // namespace hmatch
