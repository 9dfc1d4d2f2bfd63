#pragma once

// Shared test instances. All ids 0-based here; labels in comments use the
// 1-based s1/c1 convention.

#include "hmatch/core.hpp"

namespace hmatch::fixtures {

// Two students, two colleges, opposed preferences and priorities, regional
// cap of one admission in total. No matching is simultaneously fair and
// non-wasteful.
inline Instance fixture_a() {
  InstanceData d;
  d.n_students = 2;
  d.n_colleges = 2;
  d.student_prefs = {{0, 1}, {1, 0}};        // s1: c1 > c2; s2: c2 > c1
  d.college_priorities = {{1, 0}, {0, 1}};   // c1: s2 > s1; c2: s1 > s2
  d.feasibility = ConstraintSpec{RegionalCaps{{0, 0}, {1}}};
  return Instance::validate(std::move(d));
}

// Three students, one college with two seats, priority s1 > s2 > s3.
// Separates ER-k from EF-k.
inline Instance fixture_b() {
  InstanceData d;
  d.n_students = 3;
  d.n_colleges = 1;
  d.student_prefs = {{0}, {0}, {0}};
  d.college_priorities = {{0, 1, 2}};
  d.feasibility = ConstraintSpec{Capacities{{2}}};
  return Instance::validate(std::move(d));
}

// Cutoff-student illustration: three students, two colleges of capacity one,
// at most two admissions in total.
inline Instance fixture_c() {
  InstanceData d;
  d.n_students = 3;
  d.n_colleges = 2;
  d.student_prefs = {{1, 0}, {0, 1}, {1, 0}};  // s1: c2>c1; s2: c1>c2; s3: c2>c1
  d.college_priorities = {{0, 1, 2}, {2, 1, 0}};  // c1: s1>s2>s3; c2: s3>s2>s1
  d.feasibility = conjoin({ConstraintSpec{Capacities{{1, 1}}},
                           ConstraintSpec{RegionalCaps{{0, 0}, {2}}}});
  return Instance::validate(std::move(d));
}

// Running example for the cutoff algorithm: four students, three colleges of
// capacity two, at most three admissions in total.
inline Instance fixture_d() {
  InstanceData d;
  d.n_students = 4;
  d.n_colleges = 3;
  d.student_prefs = {
      {2, 0, 1},  // s1: c3 > c1 > c2
      {1, 2, 0},  // s2: c2 > c3 > c1
      {2, 1, 0},  // s3: c3 > c2 > c1
      {2, 1, 0},  // s4: c3 > c2 > c1
  };
  d.college_priorities = {
      {0, 1, 2, 3},  // c1: s1 > s2 > s3 > s4
      {0, 1, 2, 3},  // c2: s1 > s2 > s3 > s4
      {3, 2, 1, 0},  // c3: s4 > s3 > s2 > s1
  };
  d.feasibility = conjoin({ConstraintSpec{Capacities{{2, 2, 2}}},
                           ConstraintSpec{RegionalCaps{{0, 0, 0}, {3}}}});
  return Instance::validate(std::move(d));
}

// Cyclic incompatibility family: n students, n colleges, student i ranks
// colleges i, i+1, ..., i-1 while college i ranks students i+1, ..., i;
// at most one admission in total.
inline Instance fixture_e(int n) {
  InstanceData d;
  d.n_students = n;
  d.n_colleges = n;
  for (int i = 0; i < n; ++i) {
    std::vector<CollegeId> prefs(n);
    for (int j = 0; j < n; ++j) prefs[j] = (i + j) % n;
    d.student_prefs.push_back(std::move(prefs));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<StudentId> prio(n);
    for (int j = 0; j < n; ++j) prio[j] = (i + 1 + j) % n;
    d.college_priorities.push_back(std::move(prio));
  }
  d.feasibility =
      ConstraintSpec{RegionalCaps{std::vector<int>(n, 0), {1}}};
  return Instance::validate(std::move(d));
}

inline Matching make_matching(const Instance& inst,
                              std::initializer_list<std::pair<int, int>>
                                  pairs) {  // (student, college), 0-based
  Matching y(inst.n_students());
  for (auto [s, c] : pairs) y.assign(s, c);
  return y;
}

}  // namespace hmatch::fixtures
