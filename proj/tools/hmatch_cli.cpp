// Command-line harness: instance generation, single algorithm runs, property
// checking, and parameter sweeps with CSV output.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 self-check
// failure.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmatch/hmatch.hpp"

namespace {

using namespace hmatch;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::io_error: return 2;
    case Errc::self_check_failed: return 3;
    default: return 1;
  }
}

CapacityMethod parse_method(const std::string& name) {
  if (name == "fixed") return CapacityMethod::fixed;
  if (name == "uniform") return CapacityMethod::uniform;
  if (name == "normal") return CapacityMethod::normal;
  fail(Errc::invalid_config, "unknown capacity method '" + name + "'");
}

AlgorithmKind parse_algorithm(const std::string& name) {
  if (name == "alg1") return AlgorithmKind::alg1;
  if (name == "cutoff") return AlgorithmKind::cutoff;
  if (name == "spda") return AlgorithmKind::spda;
  fail(Errc::invalid_config, "unknown algorithm '" + name + "'");
}

json gen_config_to_json(const GenConfig& cfg) {
  const char* method = cfg.capacity_method == CapacityMethod::fixed
                           ? "fixed"
                           : cfg.capacity_method == CapacityMethod::uniform
                                 ? "uniform"
                                 : "normal";
  json j{{"students", cfg.n_students},
         {"colleges", cfg.n_colleges},
         {"phi_s", cfg.phi_s},
         {"phi_c", cfg.phi_c},
         {"rho", cfg.rho_c},
         {"capacity_method", method},
         {"std_ratio", cfg.std_ratio},
         {"region_ratio", cfg.region_ratio},
         {"region_capacity_ratio", cfg.region_capacity_ratio},
         {"seed", cfg.seed}};
  if (cfg.capacity_method == CapacityMethod::uniform) {
    j["cap_lo"] = cfg.uniform_lo;
    j["cap_hi"] = cfg.uniform_hi;
  }
  return j;
}

struct GenFlags {
  GenConfig cfg;
  std::string method = "normal";
  std::string out;
};

void add_gen_flags(CLI::App* cmd, GenFlags& flags) {
  cmd->add_option("--students", flags.cfg.n_students, "Number of students")
      ->required();
  cmd->add_option("--colleges", flags.cfg.n_colleges, "Number of colleges")
      ->required();
  cmd->add_option("--phi-s", flags.cfg.phi_s,
                  "Mallows dispersion for student preferences, (0,1]");
  cmd->add_option("--phi-c", flags.cfg.phi_c,
                  "Mallows dispersion for college priorities, (0,1]");
  cmd->add_option("--rho", flags.cfg.rho_c, "Supply-demand ratio, (0,1]");
  cmd->add_option("--capacity-method", flags.method,
                  "fixed | uniform | normal");
  cmd->add_option("--cap-lo", flags.cfg.uniform_lo,
                  "Uniform method: low end of capacity range");
  cmd->add_option("--cap-hi", flags.cfg.uniform_hi,
                  "Uniform method: high end of capacity range");
  cmd->add_option("--std-ratio", flags.cfg.std_ratio,
                  "Normal method: stddev as a fraction of the mean");
  cmd->add_option("--region-ratio", flags.cfg.region_ratio,
                  "Regions per student ratio");
  cmd->add_option("--region-capacity-ratio", flags.cfg.region_capacity_ratio,
                  "Regional cap as a fraction of summed capacity");
  cmd->add_option("--seed", flags.cfg.seed, "Master seed");
}

int cmd_gen(const GenFlags& flags) {
  GenConfig cfg = flags.cfg;
  cfg.capacity_method = parse_method(flags.method);
  Instance inst = generate_instance(cfg);
  json j = instance_to_json(inst);
  j["meta"] = json{{"generator", gen_config_to_json(cfg)}};
  save_text_file(flags.out, j.dump(2) + "\n");
  return 0;
}

int cmd_run(const std::string& instance_path, int k,
            const std::string& algorithm, const std::string& out,
            const std::string& trace_path) {
  Instance inst = instance_from_json(load_json_file(instance_path));
  require(k >= 0 && k <= inst.n_students(), Errc::invalid_config,
          "k must lie in 0..|S|");
  AlgorithmKind kind = parse_algorithm(algorithm);

  Matching y;
  AlgoTrace trace;
  if (kind == AlgorithmKind::alg1) {
    y = construct_er_nw(inst, k);
  } else {
    AlgoResult res = kind == AlgorithmKind::cutoff ? k_cutoff(inst, k)
                                                   : k_spda(inst, k);
    y = std::move(res.matching);
    trace = std::move(res.trace);
  }

  // Re-verify through the checkers before emitting anything; a failure here
  // is an internal bug, not a user error.
  require(matching_feasible(inst, y), Errc::self_check_failed,
          "emitted matching is infeasible");
  require(is_er_k(inst, y, k), Errc::self_check_failed,
          "emitted matching violates ER-" + std::to_string(k));
  require(is_nw_k(inst, y, k), Errc::self_check_failed,
          "emitted matching violates NW-" + std::to_string(k));

  if (!trace_path.empty()) {
    std::ostringstream os;
    trace_to_json_lines(os, trace);
    save_text_file(trace_path, os.str());
  }
  json matching_json = matching_to_json(y);
  if (!out.empty()) save_text_file(out, matching_json.dump(2) + "\n");

  json report{{"matching", matching_json},
              {"metrics", metrics_to_json(compute_metrics(inst, y))}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_check(const std::string& instance_path,
              const std::string& matching_path, int k) {
  Instance inst = instance_from_json(load_json_file(instance_path));
  require(k >= 0, Errc::invalid_config, "k must be nonnegative");
  Matching y = matching_from_json(inst, load_json_file(matching_path));

  json report{{"feasible", matching_feasible(inst, y)},
              {"er_k", is_er_k(inst, y, k)},
              {"ef_k", is_ef_k(inst, y, k)},
              {"nw_k", is_nw_k(inst, y, k)},
              {"cnw", is_cnw(inst, y)},
              {"nonwasteful", is_nonwasteful(inst, y)},
              {"stable", is_stable(inst, y)},
              {"min_er_index", min_er_index(inst, y)},
              {"metrics", metrics_to_json(compute_metrics(inst, y))}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

ExperimentConfig sweep_config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.base.n_students = j.value("students", 200);
  cfg.base.n_colleges = j.value("colleges", 10);
  cfg.base.rho_c = j.value("rho", 0.5);
  cfg.base.std_ratio = j.value("std_ratio", 0.1);
  cfg.base.region_ratio = j.value("region_ratio", 0.02);
  cfg.base.region_capacity_ratio = j.value("region_capacity_ratio", 0.6);
  cfg.base.capacity_method =
      parse_method(j.value("capacity_method", std::string("normal")));
  if (j.contains("phi_s")) cfg.phi_s_values = j.at("phi_s").get<std::vector<double>>();
  if (j.contains("phi_c")) cfg.phi_c_values = j.at("phi_c").get<std::vector<double>>();
  if (j.contains("k")) cfg.k_values = j.at("k").get<std::vector<int>>();
  cfg.trials = j.value("trials", 50);
  cfg.master_seed = j.value("seed", std::uint64_t{1});
  cfg.algorithm =
      parse_algorithm(j.value("algorithm", std::string("cutoff")));
  return cfg;
}

struct SweepFlags {
  std::string config_path;
  std::string out;
  std::string algorithm;
  int students = 0, colleges = 0, trials = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<double> phi_s, phi_c;
  std::vector<int> k_values;
};

int cmd_sweep(const SweepFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    json j = load_json_file(flags.config_path);
    require(j.is_object(), Errc::parse_error, "sweep config must be an object");
    cfg = sweep_config_from_json(j);
  } else {
    cfg.base.n_students = 200;
    cfg.base.n_colleges = 10;
  }
  if (flags.students > 0) cfg.base.n_students = flags.students;
  if (flags.colleges > 0) cfg.base.n_colleges = flags.colleges;
  if (flags.trials > 0) cfg.trials = flags.trials;
  if (flags.rho > 0.0) cfg.base.rho_c = flags.rho;
  if (flags.seed_set) cfg.master_seed = flags.seed;
  if (!flags.algorithm.empty()) cfg.algorithm = parse_algorithm(flags.algorithm);
  if (!flags.phi_s.empty()) cfg.phi_s_values = flags.phi_s;
  if (!flags.phi_c.empty()) cfg.phi_c_values = flags.phi_c;
  if (!flags.k_values.empty()) cfg.k_values = flags.k_values;
  std::vector<ResultRow> rows = run_sweep(cfg);

  std::ostringstream os;
  write_csv(os, rows);
  if (!flags.out.empty())
    save_text_file(flags.out, os.str());
  else
    std::cout << os.str();

  double total_ms = 0.0;
  for (const ResultRow& row : rows) total_ms += row.wall_ms;
  std::cerr << "sweep: " << rows.size() << " rows, " << total_ms / 1000.0
            << " s of trial time\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided matching under hereditary constraints"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  add_gen_flags(gen, gen_flags);
  gen->add_option("-o,--out", gen_flags.out, "Output instance file")
      ->required();

  std::string run_instance, run_algorithm = "cutoff", run_out, run_trace;
  int run_k = 0;
  CLI::App* run = app.add_subcommand("run", "Run an algorithm on an instance");
  run->add_option("instance", run_instance, "Instance JSON file")->required();
  run->add_option("--k", run_k, "Relaxation parameter k")->required();
  run->add_option("--algorithm", run_algorithm, "alg1 | cutoff | spda");
  run->add_option("-o,--out", run_out, "Also write the matching JSON here");
  run->add_option("--trace", run_trace, "Write the run trace as JSON lines");

  std::string check_instance, check_matching;
  int check_k = 0;
  CLI::App* check =
      app.add_subcommand("check", "Check properties of a matching");
  check->add_option("instance", check_instance, "Instance JSON file")
      ->required();
  check->add_option("matching", check_matching, "Matching JSON file")
      ->required();
  check->add_option("--k", check_k, "Relaxation parameter k")->required();

  SweepFlags sweep_flags;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run a parameter grid and emit CSV");
  sweep->add_option("--config", sweep_flags.config_path,
                    "Experiment config JSON");
  sweep->add_option("--students", sweep_flags.students, "Number of students");
  sweep->add_option("--colleges", sweep_flags.colleges, "Number of colleges");
  sweep->add_option("--trials", sweep_flags.trials, "Trials per cell");
  sweep->add_option("--rho", sweep_flags.rho, "Supply-demand ratio");
  sweep->add_option("--seed", sweep_flags.seed, "Master seed")
      ->trigger_on_parse()
      ->each([&sweep_flags](const std::string&) {
        sweep_flags.seed_set = true;
      });
  sweep->add_option("--algorithm", sweep_flags.algorithm,
                    "alg1 | cutoff | spda");
  sweep->add_option("--phi-s", sweep_flags.phi_s, "phi_s grid values");
  sweep->add_option("--phi-c", sweep_flags.phi_c, "phi_c grid values");
  sweep->add_option("--k", sweep_flags.k_values, "k grid values");
  sweep->add_option("-o,--out", sweep_flags.out, "Output CSV file");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_flags);
    if (run->parsed())
      return cmd_run(run_instance, run_k, run_algorithm, run_out, run_trace);
    if (check->parsed()) return cmd_check(check_instance, check_matching, check_k);
    if (sweep->parsed()) return cmd_sweep(sweep_flags);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const hmatch::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
