// Command-line front end: generate instances, solve them (learned or exact),
// run benchmark sweeps, and re-aggregate result CSVs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shuntyard/decomposition.hpp"
#include "shuntyard/instance_io.hpp"
#include "shuntyard/instgen.hpp"
#include "shuntyard/oracle.hpp"
#include "shuntyard/pipeline.hpp"
#include "shuntyard/yard.hpp"

namespace fs = std::filesystem;
using namespace shuntyard;

namespace {

Scale parse_scale(const std::string& name) {
  const auto s = scale_from_name(name);
  if (!s) throw CLI::ValidationError("--scale", "unknown scale '" + name + "'");
  return *s;
}

Method parse_method(const std::string& name) {
  const auto m = method_from_name(name);
  if (!m) throw CLI::ValidationError("--method", "unknown method '" + name + "'");
  return *m;
}

Mapping parse_mapping(const std::string& name) {
  const auto m = mapping_from_name(name);
  if (!m || *m == Mapping::None)
    throw CLI::ValidationError("--mapping", "unknown mapping '" + name + "'");
  return *m;
}

// Files as given; directories scanned for *.json in name order.
std::vector<std::string> collect_instance_paths(const std::vector<std::string>& args) {
  std::vector<std::string> paths;
  for (const auto& arg : args) {
    if (fs::is_directory(arg)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(arg))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          found.push_back(entry.path().string());
      std::sort(found.begin(), found.end());
      paths.insert(paths.end(), found.begin(), found.end());
    } else {
      paths.push_back(arg);
    }
  }
  if (paths.empty()) throw CLI::ValidationError("instances", "no instance files found");
  return paths;
}

nlohmann::json report_to_json(const SolveReport& rep, const YardInstance& inst) {
  nlohmann::json j;
  j["instance"] = rep.instance;
  j["scale"] = rep.scale;
  j["sided"] = inst.sided == Sided::Two ? "two" : "one";
  j["method"] = method_name(rep.method);
  j["mapping"] = mapping_name(rep.mapping);
  j["preprocessing_cost"] = rep.preprocessing_cost;
  j["batch_costs"] = rep.batch_costs;
  j["cost"] = rep.cost;
  j["makespan"] = rep.makespan;
  j["wall_time_s"] = rep.wall_time_s;
  if (rep.oracle_cost) j["oracle_cost"] = *rep.oracle_cost;
  if (rep.optimality_gap) j["optimality_gap_percent"] = *rep.optimality_gap;
  if (inst.sided == Sided::Two) {
    const SplitResult split =
        rep.mapping == Mapping::Robs ? split_robs(inst) : split_aps(inst);
    auto alloc = nlohmann::json::array();
    for (const auto& [a, b] : split.allocation.per_track)
      alloc.push_back(nlohmann::json::array({a, b}));
    j["allocation"] = alloc;
  }
  j["plan"] = nlohmann::json::parse(plan_to_json(rep.plan));
  return j;
}

void write_episode_csv(const std::string& path, const SolveReport& rep) {
  std::string out = "run,episode,reward,steps\n";
  char buf[64];
  for (const auto& trace : rep.training)
    for (const auto& ep : trace.episodes) {
      std::snprintf(buf, sizeof buf, ",%llu,%.6f,%u\n",
                    static_cast<unsigned long long>(ep.episode), ep.total_reward, ep.steps);
      out += trace.run;
      out += buf;
    }
  write_text_file(path, out);
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    write_text_file(out_path, j.dump(2) + "\n");
    std::printf("wrote %s\n", out_path.c_str());
  }
}

struct SolveFlags {
  std::string instance_path;
  std::string method = "hhrl";
  std::string mapping = "aps";
  std::string scale;
  std::string out;
  std::string episode_csv;
  SolveConfig cfg;
  double bonus = 0.0;
  bool gap = false;
  bool exclude_preprocessing = false;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& f, bool single_instance) {
  if (single_instance) {
    cmd->add_option("--method", f.method, "hhrl | qlearn | oracle");
    cmd->add_option("--mapping", f.mapping, "two-sided split rule: aps | robs");
  }
  cmd->add_option("--f", f.cfg.f, "groups per batch")->check(CLI::PositiveNumber);
  cmd->add_option("--delta", f.cfg.delta, "head-pair merge distance threshold")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--episodes", f.cfg.episodes, "training episodes per run");
  cmd->add_option("--alpha", f.cfg.alpha, "learning rate");
  cmd->add_option("--gamma", f.cfg.gamma, "discount factor");
  cmd->add_option("--eps-initial", f.cfg.eps_initial, "initial exploration rate");
  cmd->add_option("--eps-decay", f.cfg.eps_decay, "per-episode exploration decay");
  cmd->add_option("--eps-min", f.cfg.eps_min, "exploration floor");
  cmd->add_option("--step-cap", f.cfg.step_cap, "episode step cap (<=0: 50 x groups)");
  cmd->add_option("--seed", f.cfg.seed, "root random seed");
  cmd->add_option("--scale", f.scale, "override the instance's scale label");
  cmd->add_flag("--gap", f.gap, "run the exact search and report the optimality gap");
  cmd->add_flag("--exclude-preprocessing-makespan", f.exclude_preprocessing,
                "do not count standardization moves in the makespan");
  if (single_instance) {
    auto* bonus = cmd->add_option("--bonus", f.bonus, "terminal reward bonus");
    cmd->callback([&f, bonus] {
      if (bonus->count()) f.cfg.bonus = f.bonus;
    });
  }
}

SolveConfig finalize_config(SolveFlags& f) {
  f.cfg.method = parse_method(f.method);
  f.cfg.mapping = parse_mapping(f.mapping);
  if (!f.scale.empty()) f.cfg.scale_override = parse_scale(f.scale);
  f.cfg.compute_gap = f.gap;
  f.cfg.makespan_counts_preprocessing = !f.exclude_preprocessing;
  f.cfg.keep_episode_logs = !f.episode_csv.empty();
  return f.cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"railcar shunting toolkit"};
  app.require_subcommand(1);

  // generate
  std::string gen_scale = "small", gen_out;
  int gen_count = 1;
  std::uint64_t gen_seed = 1;
  bool gen_two_sided = false;
  auto* gen = app.add_subcommand("generate", "write random instances as JSON files");
  gen->add_option("--scale", gen_scale, "small | medium | large");
  gen->add_option("--count", gen_count, "instances to generate")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "base seed; instance k derives its own");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_flag("--two-sided", gen_two_sided, "also write each instance's two-sided twin");

  // solve
  SolveFlags sf;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance and report the plan");
  solve_cmd->add_option("instance", sf.instance_path, "instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  add_solver_flags(solve_cmd, sf, true);
  solve_cmd->add_option("--out", sf.out, "write the report JSON here instead of stdout");
  solve_cmd->add_option("--episode-csv", sf.episode_csv,
                        "dump per-episode training rewards (run,episode,reward,steps)");

  // oracle
  std::string oracle_path, oracle_out;
  SearchLimits limits;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact minimum-cost search");
  oracle_cmd->add_option("instance", oracle_path, "instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  oracle_cmd->add_option("--max-expanded", limits.max_expanded, "expansion budget");
  oracle_cmd->add_option("--max-frontier", limits.max_frontier, "frontier size budget");
  oracle_cmd->add_option("--time-budget", limits.time_budget_s, "seconds before giving up");
  oracle_cmd->add_flag("--allow-large", limits.allow_large,
                       "search beyond 8 groups / 8 tracks");
  oracle_cmd->add_option("--out", oracle_out, "write the result JSON here instead of stdout");

  // benchmark
  SolveFlags bf;
  std::vector<std::string> bench_paths, bench_methods{"hhrl"}, bench_mappings{"aps", "robs"};
  std::string bench_csv = "results.csv", bench_summary = "summary.json";
  int bench_jobs = 1;
  auto* bench = app.add_subcommand("benchmark", "sweep methods over an instance set");
  bench->add_option("instances", bench_paths, "instance files and/or directories")
      ->required();
  bench->add_option("--method", bench_methods, "methods to run (repeatable)")
      ->delimiter(',');
  bench->add_option("--mapping", bench_mappings, "two-sided mappings to run (repeatable)")
      ->delimiter(',');
  add_solver_flags(bench, bf, false);
  bench->add_option("--jobs", bench_jobs, "parallel solves")->check(CLI::PositiveNumber);
  bench->add_option("--out-csv", bench_csv, "per-row results file");
  bench->add_option("--out-summary", bench_summary, "aggregate JSON file");

  // report
  std::string report_csv, report_out;
  auto* report_cmd = app.add_subcommand("report", "re-aggregate a results CSV");
  report_cmd->add_option("results", report_csv, "results.csv from a benchmark run")
      ->required()
      ->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report_out, "write summary JSON here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      fs::create_directories(gen_out);
      const auto batch = generate_set(parse_scale(gen_scale), gen_count, gen_seed);
      for (const auto& inst : batch) {
        save_instance(inst, (fs::path(gen_out) / (inst.meta.name + ".json")).string());
        std::printf("%s\n", inst.meta.name.c_str());
        if (gen_two_sided) {
          const auto twin = to_two_sided(inst);
          save_instance(twin, (fs::path(gen_out) / (twin.meta.name + ".json")).string());
          std::printf("%s\n", twin.meta.name.c_str());
        }
      }
    } else if (solve_cmd->parsed()) {
      const auto inst = load_instance(sf.instance_path);
      const auto rep = solve(inst, finalize_config(sf));
      if (!sf.episode_csv.empty()) write_episode_csv(sf.episode_csv, rep);
      emit(report_to_json(rep, inst), sf.out);
    } else if (oracle_cmd->parsed()) {
      const auto inst = load_instance(oracle_path);
      const auto result = optimal_cost(inst, limits);
      nlohmann::json j;
      j["instance"] = inst.meta.name;
      j["cost"] = result.cost;
      j["expanded"] = result.expanded;
      j["generated"] = result.generated;
      j["plan"] = nlohmann::json::parse(plan_to_json(result.plan));
      emit(j, oracle_out);
    } else if (bench->parsed()) {
      BenchmarkConfig cfg;
      cfg.base = finalize_config(bf);
      cfg.jobs = bench_jobs;
      cfg.methods.clear();
      for (const auto& name : bench_methods) cfg.methods.push_back(parse_method(name));
      cfg.mappings.clear();
      for (const auto& name : bench_mappings) cfg.mappings.push_back(parse_mapping(name));

      std::vector<YardInstance> instances;
      for (const auto& path : collect_instance_paths(bench_paths))
        instances.push_back(load_instance(path));

      const auto rows = run_benchmark(instances, cfg);
      write_text_file(bench_csv, rows_to_csv(rows));
      write_text_file(bench_summary, summarize(rows));
      std::size_t errors = 0;
      for (const auto& row : rows) errors += row.ok ? 0 : 1;
      std::printf("%zu rows (%zu errors) -> %s, %s\n", rows.size(), errors,
                  bench_csv.c_str(), bench_summary.c_str());
    } else if (report_cmd->parsed()) {
      const auto rows = rows_from_csv(read_text_file(report_csv));
      if (report_out.empty())
        std::printf("%s", summarize(rows).c_str());
      else {
        write_text_file(report_out, summarize(rows));
        std::printf("wrote %s\n", report_out.c_str());
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
