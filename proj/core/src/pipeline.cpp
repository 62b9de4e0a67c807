#include "shuntyard/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "shuntyard/batching.hpp"
#include "shuntyard/decomposition.hpp"
#include "shuntyard/preprocessing.hpp"
#include "shuntyard/qlearning.hpp"
#include "shuntyard/stats.hpp"

namespace shuntyard {

const char* method_name(Method m) {
  switch (m) {
    case Method::Hhrl: return "hhrl";
    case Method::QlearnDirect: return "qlearn-direct";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

const char* mapping_name(Mapping m) {
  switch (m) {
    case Mapping::Aps: return "aps";
    case Mapping::Robs: return "robs";
    case Mapping::None: return "n/a";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  if (name == "hhrl") return Method::Hhrl;
  if (name == "qlearn-direct" || name == "qlearn") return Method::QlearnDirect;
  if (name == "oracle") return Method::Oracle;
  return std::nullopt;
}

std::optional<Mapping> mapping_from_name(const std::string& name) {
  if (name == "aps") return Mapping::Aps;
  if (name == "robs") return Mapping::Robs;
  if (name == "n/a" || name == "none") return Mapping::None;
  return std::nullopt;
}

double bonus_for(Scale scale) {
  switch (scale) {
    case Scale::Small: return 15.0;
    case Scale::Medium: return 30.0;
    case Scale::Large: return 60.0;
  }
  return 15.0;
}

namespace {

Scale resolve_scale(const YardInstance& inst, const SolveConfig& cfg) {
  if (cfg.scale_override) return *cfg.scale_override;
  if (const auto s = scale_from_name(inst.meta.scale)) return *s;
  return scale_for(group_count(inst.initial), inst.num_tracks);
}

TrainConfig train_config(const SolveConfig& cfg, Scale scale, std::uint64_t seed) {
  TrainConfig t;
  t.episodes = cfg.episodes;
  t.alpha = cfg.alpha;
  t.gamma = cfg.gamma;
  t.eps_initial = cfg.eps_initial;
  t.eps_decay = cfg.eps_decay;
  t.eps_min = cfg.eps_min;
  t.bonus = cfg.bonus.value_or(bonus_for(scale));
  t.step_cap = cfg.step_cap;
  t.seed = seed;
  return t;
}

// The whole yard as one learning problem; the plan is the greedy rollout.
void direct_solve(SolveReport& rep, const YardInstance& inst, const SolveConfig& cfg,
                  Scale scale) {
  const Environment env(inst.initial, inst.cost, inst.num_departure);
  auto trained = train(env, train_config(cfg, scale, mix_seed(cfg.seed, 11)));
  if (cfg.keep_episode_logs)
    rep.training.push_back(TrainingTrace{"direct", std::move(trained.episodes)});
  const auto rollout = greedy_rollout(trained.table, env, mix_seed(cfg.seed, 12), cfg.step_cap);
  rep.plan = rollout.plan;
  rep.cost = rollout.cost;
  rep.makespan = static_cast<int>(rollout.plan.moves.size());
}

// Standardize, cut the train into batches, learn each batch in its fenced
// sub-yard, and translate the learned moves back to physical block sizes.
void batched_solve(SolveReport& rep, const YardInstance& inst, const SolveConfig& cfg,
                   Scale scale) {
  const int k0 = inst.num_departure;
  const auto pre = preprocess(inst.initial, inst.cost, k0, cfg.delta);
  rep.preprocessing_cost = pre.plan.total_cost;
  rep.plan = pre.plan;

  const auto batches = make_batches(pre.standardized, k0, cfg.f);
  YardState work = pre.standardized;
  for (std::size_t r = 0; r < batches.size(); ++r) {
    const Batch& batch = batches[r];
    // The learning environment sees only this batch's groups; the allowed
    // departure tracks are modeled empty even when earlier batches already
    // delivered onto them. Every move in the learned plan touches track
    // prefixes only and costs depend on track indices alone, so the plan
    // transfers move-for-move to the real yard — while the environment's
    // state space stays capped by the batch size instead of growing with
    // every group delivered so far.
    YardState env_state;
    env_state.tracks.resize(work.tracks.size());
    const auto& train_track = work.tracks[static_cast<std::size_t>(k0)];
    env_state.tracks[static_cast<std::size_t>(k0)]
        .assign(train_track.begin(),
                train_track.begin() + static_cast<std::ptrdiff_t>(batch.groups.size()));

    const Environment env(env_state, inst.cost, k0, batch.allowed_tracks);
    auto trained = train(env, train_config(cfg, scale, mix_seed(cfg.seed, 100 + r)));
    if (cfg.keep_episode_logs)
      rep.training.push_back(
          TrainingTrace{"batch" + std::to_string(r), std::move(trained.episodes)});
    RolloutResult rollout;
    try {
      rollout = greedy_rollout(trained.table, env, mix_seed(cfg.seed, 500 + r), cfg.step_cap);
    } catch (const std::exception& e) {
      throw std::runtime_error("batch " + std::to_string(r) + ": " + e.what());
    }

    double batch_cost = 0.0;
    for (const Move& logical : rollout.plan.moves) {
      const auto& source = work.tracks[static_cast<std::size_t>(logical.from)];
      int physical = 0;
      for (int g = 0; g < logical.count; ++g)
        physical += source[static_cast<std::size_t>(g)].units;
      rep.plan.moves.push_back(Move{logical.from, physical, logical.to, End::A, logical.cost});
      rep.plan.tags.push_back("batch" + std::to_string(r));
      work = apply_move(work, logical, inst.cost).first;
      batch_cost += logical.cost;
    }
    rep.batch_costs.push_back(batch_cost);
  }
  if (!is_terminal(work, k0))
    throw std::logic_error("batched solve left the yard non-terminal");

  rep.cost = rep.preprocessing_cost;
  for (const double c : rep.batch_costs) rep.cost += c;
  const std::size_t pre_moves = pre.plan.moves.size();
  rep.makespan = static_cast<int>(cfg.makespan_counts_preprocessing
                                      ? rep.plan.moves.size()
                                      : rep.plan.moves.size() - pre_moves);
}

void oracle_solve(SolveReport& rep, const YardInstance& inst, const SolveConfig& cfg) {
  const OracleResult result = optimal_cost(inst, cfg.oracle_limits);
  rep.plan = result.plan;
  rep.cost = result.cost;
  rep.makespan = static_cast<int>(result.plan.moves.size());
  rep.oracle_cost = result.cost;
  rep.optimality_gap = 0.0;
}

void validate_report(const YardInstance& inst, SolveReport& rep) {
  rep.plan.total_cost = rep.cost;
  rep.plan.makespan = rep.makespan;
  const auto replayed = replay_plan(inst, rep.plan);
  if (std::fabs(replayed.total_cost - rep.cost) > 1e-6)
    throw std::logic_error("plan replay cost " + std::to_string(replayed.total_cost) +
                           " disagrees with reported cost " + std::to_string(rep.cost));
  if (!is_terminal(replayed.final_state, inst.num_departure))
    throw std::logic_error("plan replay did not reach a terminal state");
}

void attach_gap(SolveReport& rep, const YardInstance& inst, const SolveConfig& cfg) {
  if (!cfg.compute_gap || rep.oracle_cost) return;
  try {
    const OracleResult o = optimal_cost(inst, cfg.oracle_limits);
    rep.oracle_cost = o.cost;
    rep.optimality_gap = optimality_gap(rep.cost, o.cost);
  } catch (const SearchLimitExceeded&) {
    // no baseline within limits; the gap stays empty
  }
}

}  // namespace

SolveReport solve_os(const YardInstance& instance, const SolveConfig& config) {
  if (instance.sided != Sided::One)
    throw std::invalid_argument("solve_os needs a one-sided instance");
  const auto t0 = std::chrono::steady_clock::now();

  const Scale scale = resolve_scale(instance, config);
  SolveReport rep;
  rep.instance = instance.meta.name;
  rep.scale = scale_name(scale);
  rep.method = config.method;
  rep.mapping = Mapping::None;

  switch (config.method) {
    case Method::Oracle:
      oracle_solve(rep, instance, config);
      break;
    case Method::QlearnDirect:
      direct_solve(rep, instance, config, scale);
      break;
    case Method::Hhrl:
      if (scale == Scale::Small &&
          group_count(instance.initial) + instance.num_tracks - instance.num_departure <=
              config.direct_size_limit) {
        try {
          direct_solve(rep, instance, config, scale);
        } catch (const std::runtime_error&) {
          // The size fence is only a guess at where whole-yard learning stays
          // reliable. Some yards under the fence explore too poorly for the
          // greedy rollout to finish; the decomposition pipeline still
          // handles them, so fall back instead of failing the solve. Any
          // episode logs from the abandoned attempt stay in the report.
          batched_solve(rep, instance, config, scale);
        }
      } else {
        batched_solve(rep, instance, config, scale);
      }
      break;
  }

  validate_report(instance, rep);
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  attach_gap(rep, instance, config);
  return rep;
}

SolveReport solve_ts(const YardInstance& instance, const SolveConfig& config) {
  if (instance.sided != Sided::Two)
    throw std::invalid_argument("solve_ts needs a two-sided instance");
  const auto t0 = std::chrono::steady_clock::now();

  SplitResult split;
  switch (config.mapping) {
    case Mapping::Aps: split = split_aps(instance); break;
    case Mapping::Robs: split = split_robs(instance); break;
    case Mapping::None:
      throw std::invalid_argument("a two-sided solve needs a track-to-end mapping");
  }

  SolveConfig sub = config;
  sub.compute_gap = false;
  sub.mapping = Mapping::None;

  SolveReport rep_a, rep_b;
  try {
    sub.seed = mix_seed(config.seed, 0xA);
    rep_a = solve_os(split.a, sub);
  } catch (const std::exception& e) {
    throw std::runtime_error("subproblem A: " + std::string(e.what()));
  }
  try {
    sub.seed = mix_seed(config.seed, 0xB);
    rep_b = solve_os(split.b, sub);
  } catch (const std::exception& e) {
    throw std::runtime_error("subproblem B: " + std::string(e.what()));
  }

  SolveReport rep;
  rep.instance = instance.meta.name;
  rep.scale = scale_name(resolve_scale(instance, config));
  rep.method = config.method;
  rep.mapping = config.mapping;
  rep.preprocessing_cost = rep_a.preprocessing_cost + rep_b.preprocessing_cost;
  rep.batch_costs = rep_a.batch_costs;
  rep.batch_costs.insert(rep.batch_costs.end(), rep_b.batch_costs.begin(),
                         rep_b.batch_costs.end());
  rep.cost = rep_a.cost + rep_b.cost;
  rep.makespan = std::max(rep_a.makespan, rep_b.makespan);
  rep.plan = combine_plans(rep_a.plan, rep_b.plan);
  for (auto& trace : rep_a.training)
    rep.training.push_back(TrainingTrace{"A:" + trace.run, std::move(trace.episodes)});
  for (auto& trace : rep_b.training)
    rep.training.push_back(TrainingTrace{"B:" + trace.run, std::move(trace.episodes)});

  rep.plan.total_cost = rep.cost;
  const auto replayed = replay_plan(instance, rep.plan);
  if (std::fabs(replayed.total_cost - rep.cost) > 1e-6)
    throw std::logic_error("combined plan replay cost disagrees with the reported cost");
  if (!is_terminal(replayed.final_state, instance.num_departure))
    throw std::logic_error("combined plan did not reach a terminal state");

  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

SolveReport solve(const YardInstance& instance, const SolveConfig& config) {
  return instance.sided == Sided::Two ? solve_ts(instance, config) : solve_os(instance, config);
}

// ---- benchmark harness ----

namespace {

std::uint64_t row_seed(std::uint64_t base, const std::string& name, Method m, Mapping mp) {
  std::uint64_t h = splitmix64(base ^ 0x5eedb10c0ULL);
  for (const unsigned char ch : name) h = splitmix64(h ^ ch);
  return mix_seed(h, static_cast<std::uint64_t>(m) * 4 + static_cast<std::uint64_t>(mp));
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (const char ch : raw) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const std::vector<YardInstance>& instances,
                                        const BenchmarkConfig& config) {
  struct Job {
    const YardInstance* inst;
    Method method;
    Mapping mapping;
  };
  std::vector<Job> jobs;
  for (const auto& inst : instances) {
    for (const Method m : config.methods) {
      if (inst.sided == Sided::Two) {
        for (const Mapping mp : config.mappings) jobs.push_back({&inst, m, mp});
      } else {
        jobs.push_back({&inst, m, Mapping::None});
      }
    }
  }

  std::vector<BenchmarkRow> rows(jobs.size());
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t k = cursor.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job& job = jobs[k];
      BenchmarkRow& row = rows[k];
      row.instance = job.inst->meta.name;
      row.sided = job.inst->sided;
      row.method = job.method;
      row.mapping = job.mapping;

      SolveConfig c = config.base;
      c.method = job.method;
      c.mapping = job.mapping == Mapping::None && job.inst->sided == Sided::Two
                      ? Mapping::Aps
                      : job.mapping;
      c.seed = row_seed(config.base.seed, job.inst->meta.name, job.method, job.mapping);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const SolveReport rep = solve(*job.inst, c);
        row.ok = true;
        row.scale = rep.scale;
        row.cost = rep.cost;
        row.makespan = rep.makespan;
        row.preprocessing_cost = rep.preprocessing_cost;
        row.batches = rep.batch_costs.size();
        row.gap = rep.optimality_gap;
        row.wall_time_s = rep.wall_time_s;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.scale = job.inst->meta.scale;
        row.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
    }
  };

  const int thread_count = std::max(1, config.jobs);
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int k = 0; k < thread_count; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string rows_to_csv(const std::vector<BenchmarkRow>& rows) {
  std::string out =
      "instance,scale,sided,method,mapping,status,cost,makespan,preprocessing_cost,batches,"
      "gap,time_s,error\n";
  for (const auto& r : rows) {
    out += csv_field(r.instance);
    out += ',';
    out += csv_field(r.scale);
    out += ',';
    out += r.sided == Sided::Two ? "two" : "one";
    out += ',';
    out += method_name(r.method);
    out += ',';
    out += mapping_name(r.mapping);
    out += ',';
    out += r.ok ? "ok" : "error";
    out += ',';
    out += r.ok ? fixed6(r.cost) : "";
    out += ',';
    out += r.ok ? std::to_string(r.makespan) : "";
    out += ',';
    out += r.ok ? fixed6(r.preprocessing_cost) : "";
    out += ',';
    out += r.ok ? std::to_string(r.batches) : "";
    out += ',';
    out += r.gap ? fixed6(*r.gap) : "";
    out += ',';
    out += fixed6(r.wall_time_s);
    out += ',';
    out += csv_field(r.error);
    out += '\n';
  }
  return out;
}

namespace {

// Record-at-a-time CSV reader; quoted fields may contain commas, doubled
// quotes, and newlines.
std::vector<std::vector<std::string>> csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool pending = false;  // something on the current record (even an empty cell)
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char ch = text[k];
    if (quoted) {
      if (ch == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          cell += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
      pending = true;
    } else if (ch == '"') {
      quoted = true;
      pending = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
      pending = true;
    } else if (ch == '\n') {
      if (pending || !cells.empty()) {
        cells.push_back(std::move(cell));
        cell.clear();
        records.push_back(std::move(cells));
        cells.clear();
        pending = false;
      }
    } else if (ch != '\r') {
      cell += ch;
      pending = true;
    }
  }
  if (quoted) throw std::invalid_argument("results CSV ends inside a quoted field");
  if (pending || !cells.empty()) {
    cells.push_back(std::move(cell));
    records.push_back(std::move(cells));
  }
  return records;
}

double csv_number(const std::string& cell, const char* what, std::size_t record) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("record " + std::to_string(record) + ": bad " + what +
                                " value '" + cell + "'");
  }
}

}  // namespace

std::vector<BenchmarkRow> rows_from_csv(const std::string& csv) {
  const auto records = csv_records(csv);
  if (records.empty()) throw std::invalid_argument("empty results CSV");
  const std::vector<std::string> header = {
      "instance", "scale",   "sided",   "method",  "mapping",             "status", "cost",
      "makespan", "preprocessing_cost", "batches", "gap",     "time_s",   "error"};
  if (records[0] != header)
    throw std::invalid_argument("unrecognized results CSV header");

  std::vector<BenchmarkRow> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto& cells = records[k];
    if (cells.size() != header.size())
      throw std::invalid_argument("record " + std::to_string(k) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(cells.size()));
    BenchmarkRow row;
    row.instance = cells[0];
    row.scale = cells[1];
    if (cells[2] == "one") row.sided = Sided::One;
    else if (cells[2] == "two") row.sided = Sided::Two;
    else throw std::invalid_argument("record " + std::to_string(k) + ": bad sided value '" +
                                     cells[2] + "'");
    const auto method = method_from_name(cells[3]);
    if (!method)
      throw std::invalid_argument("record " + std::to_string(k) + ": unknown method '" +
                                  cells[3] + "'");
    row.method = *method;
    const auto mapping = mapping_from_name(cells[4]);
    if (!mapping)
      throw std::invalid_argument("record " + std::to_string(k) + ": unknown mapping '" +
                                  cells[4] + "'");
    row.mapping = *mapping;
    if (cells[5] == "ok") row.ok = true;
    else if (cells[5] == "error") row.ok = false;
    else throw std::invalid_argument("record " + std::to_string(k) + ": bad status '" +
                                     cells[5] + "'");
    if (row.ok) {
      row.cost = csv_number(cells[6], "cost", k);
      row.makespan = static_cast<int>(csv_number(cells[7], "makespan", k));
      row.preprocessing_cost = csv_number(cells[8], "preprocessing_cost", k);
      row.batches = static_cast<std::size_t>(csv_number(cells[9], "batches", k));
    }
    if (!cells[10].empty()) row.gap = csv_number(cells[10], "gap", k);
    row.wall_time_s = csv_number(cells[11], "time_s", k);
    row.error = cells[12];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summarize(const std::vector<BenchmarkRow>& rows) {
  nlohmann::json out;

  // scale x method aggregates
  std::map<std::string, std::map<std::string, std::vector<const BenchmarkRow*>>> buckets;
  for (const auto& r : rows) {
    std::string key = method_name(r.method);
    if (r.mapping != Mapping::None) key += std::string("-") + mapping_name(r.mapping);
    buckets[r.scale.empty() ? "unknown" : r.scale][key].push_back(&r);
  }
  for (const auto& [scale, methods] : buckets) {
    for (const auto& [meth, group] : methods) {
      nlohmann::json cell;
      std::size_t ok = 0;
      double cost = 0, time = 0, makespan = 0, gap = 0;
      std::size_t gaps = 0;
      for (const auto* r : group) {
        time += r->wall_time_s;
        if (!r->ok) continue;
        ++ok;
        cost += r->cost;
        makespan += r->makespan;
        if (r->gap) {
          gap += *r->gap;
          ++gaps;
        }
      }
      cell["count"] = group.size();
      cell["errors"] = group.size() - ok;
      cell["mean_time_s"] = group.empty() ? 0.0 : time / static_cast<double>(group.size());
      if (ok > 0) {
        cell["mean_cost"] = cost / static_cast<double>(ok);
        cell["mean_makespan"] = makespan / static_cast<double>(ok);
      }
      if (gaps > 0) {
        cell["mean_gap_percent"] = gap / static_cast<double>(gaps);
        cell["gap_count"] = gaps;
      }
      out["scales"][scale][meth] = cell;
    }
  }

  // one-sided vs two-sided makespans, paired by instance base name
  for (const Mapping mapping : {Mapping::Aps, Mapping::Robs}) {
    std::vector<double> os_ms, ts_ms, reductions;
    for (const auto& ts : rows) {
      if (!ts.ok || ts.sided != Sided::Two || ts.mapping != mapping) continue;
      if (ts.instance.size() < 3 || ts.instance.substr(ts.instance.size() - 3) != "_ts")
        continue;
      const std::string base = ts.instance.substr(0, ts.instance.size() - 3);
      for (const auto& os : rows) {
        if (!os.ok || os.sided != Sided::One || os.instance != base) continue;
        if (os.method != ts.method) continue;
        if (os.makespan <= 0) continue;
        os_ms.push_back(os.makespan);
        ts_ms.push_back(ts.makespan);
        reductions.push_back(makespan_reduction(os.makespan, ts.makespan));
        break;
      }
    }
    if (os_ms.size() >= 2) {
      nlohmann::json cmp;
      cmp["pairs"] = os_ms.size();
      double mean_red = 0, mean_os = 0, mean_ts = 0;
      for (std::size_t k = 0; k < os_ms.size(); ++k) {
        mean_red += reductions[k];
        mean_os += os_ms[k];
        mean_ts += ts_ms[k];
      }
      mean_red /= static_cast<double>(reductions.size());
      cmp["mean_reduction_per_instance_percent"] = mean_red;
      cmp["reduction_of_means_percent"] = makespan_reduction(mean_os, mean_ts);
      const auto t = paired_t_test_one_sided(os_ms, ts_ms);
      cmp["t"] = std::isfinite(t.t) ? t.t : (t.t > 0 ? 1e308 : -1e308);
      cmp["df"] = t.df;
      cmp["p"] = t.p;
      cmp["degenerate_variance"] = t.degenerate;
      out["makespan_comparison"][mapping_name(mapping)] = cmp;
    }
  }

  return out.dump(2) + "\n";
}

}  // namespace shuntyard
