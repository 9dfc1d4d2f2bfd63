#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmatch/algorithms.hpp"
#include "hmatch/core.hpp"
#include "hmatch/generator.hpp"
#include "hmatch/metrics.hpp"

namespace hmatch {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Constraint specs: tagged union, mirroring the in-memory type 1:1. Region
// indices are 1-based on the wire like every other id.
// ---------------------------------------------------------------------------

inline json spec_to_json(const ConstraintSpec& spec) {
  struct Visitor {
    json operator()(const Capacities& f) const {
      return json{{"type", "capacities"}, {"q", f.q}};
    }
    json operator()(const RegionalCaps& f) const {
      std::vector<int> regions;
      regions.reserve(f.region.size());
      for (int r : f.region) regions.push_back(r + 1);
      return json{{"type", "regional"}, {"regions", regions},
                  {"caps", f.caps}};
    }
    json operator()(const Multidimensional& f) const {
      return json{{"type", "multidim"}, {"demand", f.demand},
                  {"limits", f.limits}};
    }
    json operator()(const Explicit& f) const {
      return json{{"type", "explicit"}, {"maximal", f.maximal}};
    }
    json operator()(const Conjunction& f) const {
      json parts = json::array();
      for (const auto& part : f.parts) parts.push_back(spec_to_json(part));
      return json{{"type", "conjunction"}, {"parts", parts}};
    }
  };
  return std::visit(Visitor{}, spec.family);
}

inline ConstraintSpec spec_from_json(const json& j) {
  require(j.is_object() && j.contains("type"), Errc::parse_error,
          "feasibility spec must be an object with a type tag");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "capacities") {
      return ConstraintSpec{Capacities{j.at("q").get<std::vector<int>>()}};
    } else if (type == "regional") {
      RegionalCaps f;
      for (int r : j.at("regions").get<std::vector<int>>()) {
        require(r >= 1, Errc::parse_error, "region ids are 1-based");
        f.region.push_back(r - 1);
      }
      f.caps = j.at("caps").get<std::vector<int>>();
      return ConstraintSpec{std::move(f)};
    } else if (type == "multidim") {
      Multidimensional f;
      f.demand = j.at("demand").get<std::vector<std::vector<int>>>();
      f.limits = j.at("limits").get<std::vector<int>>();
      return ConstraintSpec{std::move(f)};
    } else if (type == "explicit") {
      // Canonicalized on input: only maximal elements are kept.
      return ConstraintSpec{Explicit{
          antichain(j.at("maximal").get<std::vector<LoadVector>>())}};
    } else if (type == "conjunction") {
      Conjunction f;
      for (const auto& part : j.at("parts")) f.parts.push_back(spec_from_json(part));
      return ConstraintSpec{std::move(f)};
    }
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad feasibility spec: ") + e.what());
  }
  fail(Errc::parse_error, "unknown feasibility type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Instances and matchings.
// ---------------------------------------------------------------------------

inline json instance_to_json(const Instance& inst) {
  json prefs = json::array();
  for (StudentId s = 0; s < inst.n_students(); ++s) {
    std::vector<int> row;
    row.reserve(inst.preferences(s).size());
    for (CollegeId c : inst.preferences(s)) row.push_back(c + 1);
    prefs.push_back(row);
  }
  json priorities = json::array();
  for (CollegeId c = 0; c < inst.n_colleges(); ++c) {
    std::vector<int> row;
    row.reserve(inst.priorities(c).size());
    for (StudentId s : inst.priorities(c)) row.push_back(s + 1);
    priorities.push_back(row);
  }
  return json{{"students", inst.n_students()},
              {"colleges", inst.n_colleges()},
              {"prefs", prefs},
              {"priorities", priorities},
              {"feasibility", spec_to_json(inst.feasibility_spec())}};
}

inline Instance instance_from_json(const json& j) {
  InstanceData data;
  try {
    data.n_students = j.at("students").get<int>();
    data.n_colleges = j.at("colleges").get<int>();
    for (const auto& row : j.at("prefs")) {
      std::vector<CollegeId> prefs;
      for (int c1 : row.get<std::vector<int>>()) prefs.push_back(c1 - 1);
      data.student_prefs.push_back(std::move(prefs));
    }
    for (const auto& row : j.at("priorities")) {
      std::vector<StudentId> prio;
      for (int s1 : row.get<std::vector<int>>()) prio.push_back(s1 - 1);
      data.college_priorities.push_back(std::move(prio));
    }
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad instance: ") + e.what());
  }
  data.feasibility = spec_from_json(j.at("feasibility"));
  return Instance::validate(std::move(data));
}

// Matching wire format: {"assignment": {"s1": "c3", ...}}, unmatched
// students omitted.
inline json matching_to_json(const Matching& y) {
  json assignment = json::object();
  for (StudentId s = 0; s < y.n_students(); ++s)
    if (y.matched(s))
      assignment[student_label(s)] = college_label(y.college_of(s));
  return json{{"assignment", assignment}};
}

inline Matching matching_from_json(const Instance& inst, const json& j) {
  require(j.is_object() && j.contains("assignment") &&
              j.at("assignment").is_object(),
          Errc::parse_error, "matching must be {\"assignment\": {...}}");
  Matching y(inst.n_students());
  for (const auto& [key, value] : j.at("assignment").items()) {
    require(value.is_string(), Errc::parse_error,
            "assignment values must be college labels");
    StudentId s = parse_student_label(key);
    CollegeId c = parse_college_label(value.get<std::string>());
    require(s < inst.n_students() && c < inst.n_colleges(), Errc::inconsistent,
            "assignment references unknown ids");
    y.assign(s, c);
  }
  validate_matching(inst, y);
  return y;
}

inline json metrics_to_json(const MetricsRecord& rec) {
  return json{{"avg_envy_received", rec.avg_envy_received},
              {"max_envy_received", rec.max_envy_received},
              {"maximum_objections", rec.maximum_objections},
              {"total_envy", rec.total_envy},
              {"total_claims", rec.total_claims}};
}

// One event per line for debugging dumps.
inline void trace_to_json_lines(std::ostream& os, const AlgoTrace& trace) {
  for (const TraceEvent& ev : trace) {
    json line;
    switch (ev.kind) {
      case TraceEvent::Kind::examine_college:
        line = {{"event", "examine"}, {"college", college_label(ev.college)}};
        break;
      case TraceEvent::Kind::propose:
        line = {{"event", "propose"}, {"college", college_label(ev.college)},
                {"student", student_label(ev.student)}};
        break;
      case TraceEvent::Kind::assign:
        line = {{"event", "assign"}, {"college", college_label(ev.college)},
                {"student", student_label(ev.student)},
                {"from", ev.previous == kUnmatched
                             ? std::string("-")
                             : college_label(ev.previous)}};
        break;
      case TraceEvent::Kind::update_cutoff:
        line = {{"event", "cutoff"}, {"college", college_label(ev.college)},
                {"before", ev.cutoff_before}, {"after", ev.cutoff_after}};
        break;
      case TraceEvent::Kind::reset_stack:
        line = {{"event", "reset"}};
        break;
    }
    os << line.dump() << "\n";
  }
}

// ---------------------------------------------------------------------------
// Files.
// ---------------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::io_error, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, path + ": " + e.what());
  }
}

inline void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  require(out.good(), Errc::io_error, "cannot write " + path);
  out << text;
  require(out.good(), Errc::io_error, "write failed for " + path);
}

}  // namespace hmatch
