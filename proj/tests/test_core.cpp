#include <catch2/catch_amalgamated.hpp>

#include "hmatch/core.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hmatch;
using namespace hmatch::fixtures;

TEST_CASE("validate_instance accepts fixture A") {
  Instance inst = fixture_a();
  CHECK(inst.n_students() == 2);
  CHECK(inst.n_colleges() == 2);
  CHECK(inst.lists(0, 0));
  CHECK(inst.rank_of(0, 1) == 1);  // c1 ranks s2 first
}

TEST_CASE("validate_instance rejects duplicate preference entries") {
  InstanceData d;
  d.n_students = 2;
  d.n_colleges = 2;
  d.student_prefs = {{0, 0}, {1}};
  d.college_priorities = {{0, 1}, {1, 0}};
  d.feasibility = ConstraintSpec{Capacities{{1, 1}}};
  try {
    Instance::validate(std::move(d));
    FAIL("expected DuplicateInPreference");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_in_preference);
  }
}

TEST_CASE("validate_instance rejects non-permutation priorities") {
  InstanceData d;
  d.n_students = 2;
  d.n_colleges = 1;
  d.student_prefs = {{0}, {0}};
  d.college_priorities = {{0}};  // missing s2
  d.feasibility = ConstraintSpec{Capacities{{1}}};
  try {
    Instance::validate(std::move(d));
    FAIL("expected PriorityNotPermutation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::priority_not_permutation);
  }
}

TEST_CASE("validate_instance rejects out-of-range ids") {
  InstanceData d;
  d.n_students = 2;
  d.n_colleges = 1;
  d.student_prefs = {{3}, {0}};
  d.college_priorities = {{0, 1}};
  d.feasibility = ConstraintSpec{Capacities{{1}}};
  try {
    Instance::validate(std::move(d));
    FAIL("expected IdOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::id_out_of_range);
  }
}

TEST_CASE("score_of matches rank arithmetic") {
  Instance inst = fixture_c();
  CHECK(score_of(inst, 0, 1) == 2);  // s2 is ranked 2nd of 3 at c1
  CHECK(score_of(inst, 0, 0) == 3);  // top priority scores |S|
  CHECK(score_of(inst, 0, 2) == 1);  // bottom priority scores 1
  CHECK(score_of(inst, 1, 2) == 3);
}

TEST_CASE("score_of is a bijection onto 1..|S| per college") {
  SplitRng rng(17, 0);
  for (int trial = 0; trial < 25; ++trial) {
    Instance inst = oracles::random_small_instance(rng);
    for (CollegeId c = 0; c < inst.n_colleges(); ++c) {
      std::vector<int> scores;
      for (StudentId s = 0; s < inst.n_students(); ++s)
        scores.push_back(score_of(inst, c, s));
      std::sort(scores.begin(), scores.end());
      for (int i = 0; i < inst.n_students(); ++i) CHECK(scores[i] == i + 1);
    }
  }
}

TEST_CASE("prefers ranks options like the preference list") {
  Instance inst = fixture_a();
  CHECK(prefers(inst, 0, 0, 1) == Preference::better);  // s1: c1 over c2
  CHECK(prefers(inst, 0, 1, 0) == Preference::worse);
  CHECK(prefers(inst, 0, 0, 0) == Preference::equal);
  CHECK(prefers(inst, 0, 0, kUnmatched) == Preference::better);
  CHECK(prefers(inst, 1, kUnmatched, 0) == Preference::worse);
}

TEST_CASE("prefers puts unlisted colleges below unmatched") {
  InstanceData d;
  d.n_students = 1;
  d.n_colleges = 2;
  d.student_prefs = {{0}};  // c2 unlisted
  d.college_priorities = {{0}, {0}};
  d.feasibility = ConstraintSpec{Capacities{{1, 1}}};
  Instance inst = Instance::validate(std::move(d));
  CHECK(prefers(inst, 0, kUnmatched, 1) == Preference::better);
  CHECK(prefers(inst, 0, 0, 1) == Preference::better);
  CHECK(strictly_prefers(inst, 0, kUnmatched, 1));
}

TEST_CASE("load_vector counts per-college assignments") {
  Instance d = fixture_d();
  Matching y6 = make_matching(d, {{0, 2}, {1, 1}, {2, 2}});
  CHECK(load_vector(d, y6) == LoadVector{0, 1, 2});

  CHECK(load_vector(d, Matching(4)) == LoadVector{0, 0, 0});

  Instance b = fixture_b();
  Matching y1 = make_matching(b, {{1, 0}, {2, 0}});
  CHECK(load_vector(b, y1) == LoadVector{2});
}

TEST_CASE("load_vector is coordinatewise monotone under removal") {
  SplitRng rng(23, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst = oracles::random_small_instance(rng);
    Matching y = oracles::random_feasible_matching(rng, inst);
    LoadVector before = load_vector(inst, y);
    for (StudentId s = 0; s < inst.n_students(); ++s) {
      if (!y.matched(s)) continue;
      Matching reduced = y;
      reduced.unassign(s);
      LoadVector after = load_vector(inst, reduced);
      for (int c = 0; c < inst.n_colleges(); ++c) CHECK(after[c] <= before[c]);
    }
  }
}

TEST_CASE("labels round-trip between 1-based text and 0-based ids") {
  for (int i = 0; i < 250; ++i) {
    CHECK(parse_student_label(student_label(i)) == i);
    CHECK(parse_college_label(college_label(i)) == i);
  }
  CHECK(student_label(0) == "s1");
  CHECK(college_label(2) == "c3");
  CHECK_THROWS_AS(parse_student_label("c1"), Error);
  CHECK_THROWS_AS(parse_student_label("s0"), Error);
  CHECK_THROWS_AS(parse_college_label("c"), Error);
}

TEST_CASE("validate_matching flags assignments off the preference list") {
  Instance inst = fixture_a();
  Matching y(2);
  y.assign(0, 1);
  CHECK_NOTHROW(validate_matching(inst, y));
  Matching bad(2);
  bad.assign(0, 5);
  try {
    validate_matching(inst, bad);
    FAIL("expected Inconsistent");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::inconsistent);
  }
}
