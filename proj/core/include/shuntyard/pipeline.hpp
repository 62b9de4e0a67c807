#pragma once

// End-to-end solving. One-sided instances route by scale: small ones are
// learned directly, everything else goes standardize -> batch -> per-batch
// learning, with the batch moves translated back into physical moves on the
// loaded yard. Two-sided instances are split, solved per end, and recombined.
// Every emitted plan is replayed against the untouched instance before the
// report leaves this module.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shuntyard/instgen.hpp"
#include "shuntyard/oracle.hpp"
#include "shuntyard/qlearning.hpp"
#include "shuntyard/yard.hpp"

namespace shuntyard {

enum class Method { Hhrl, QlearnDirect, Oracle };
enum class Mapping { Aps, Robs, None };

const char* method_name(Method m);
const char* mapping_name(Mapping m);
std::optional<Method> method_from_name(const std::string& name);
std::optional<Mapping> mapping_from_name(const std::string& name);

// Default terminal bonus per scale class.
double bonus_for(Scale scale);

struct SolveConfig {
  Method method = Method::Hhrl;
  Mapping mapping = Mapping::Aps;  // used by two-sided solves only
  int f = 5;                       // batch size
  int delta = 3;                   // head-pair index-distance threshold

  std::uint64_t episodes = 500'000;
  double alpha = 0.1;
  double gamma = 0.99;
  double eps_initial = 1.0;
  double eps_decay = 0.9999888;
  double eps_min = 0.02;
  std::optional<double> bonus;  // default: bonus_for(scale)
  int step_cap = 0;             // <= 0: 50 x groups

  std::uint64_t seed = 0;  // root of every derived stream (batches, sides, ties)

  // Small instances are learned directly only while groups + classification
  // tracks stays within this budget; beyond it the batched route is used even
  // when the scale label says small, since the direct table's state count
  // explodes in both dimensions (9 groups over 5 classification tracks
  // already exhausts gigabytes at full episode counts).
  int direct_size_limit = 12;
  std::optional<Scale> scale_override;

  // When set, an exact search runs after the solve and the report carries
  // the optimality gap (left empty if the search hits its limits).
  bool compute_gap = false;
  SearchLimits oracle_limits{.max_expanded = 2'000'000, .max_frontier = 4'000'000,
                             .time_budget_s = 60.0, .allow_large = true};

  // Preprocessing moves are part of the plan; this only controls whether
  // they count toward the reported makespan.
  bool makespan_counts_preprocessing = true;

  // Keep per-episode rewards from every training run in the report (for
  // learning-curve dumps). Off by default: half a million rows per run.
  bool keep_episode_logs = false;
};

// One training run's per-episode history, labeled by where it ran
// ("direct", "batch3", "A:direct", ...).
struct TrainingTrace {
  std::string run;
  std::vector<EpisodeLog> episodes;
};

struct SolveReport {
  std::string instance;
  std::string scale;  // label the routing used
  Method method = Method::Hhrl;
  Mapping mapping = Mapping::None;

  double preprocessing_cost = 0.0;
  std::vector<double> batch_costs;  // empty on the direct and oracle paths
  double cost = 0.0;                // preprocessing + batches, or the direct/oracle cost
  int makespan = 0;
  double wall_time_s = 0.0;

  std::optional<double> oracle_cost;
  std::optional<double> optimality_gap;  // percent above optimal

  ShuntPlan plan;  // replay-validated against the instance

  std::vector<TrainingTrace> training;  // only when keep_episode_logs is set
};

SolveReport solve_os(const YardInstance& instance, const SolveConfig& config);
SolveReport solve_ts(const YardInstance& instance, const SolveConfig& config);

// Dispatch on the instance's sidedness.
SolveReport solve(const YardInstance& instance, const SolveConfig& config);

// ---- benchmark harness ----

struct BenchmarkRow {
  std::string instance;
  std::string scale;
  Sided sided = Sided::One;
  Method method = Method::Hhrl;
  Mapping mapping = Mapping::None;
  bool ok = false;
  std::string error;  // empty when ok
  double cost = 0.0;
  int makespan = 0;
  double preprocessing_cost = 0.0;
  std::size_t batches = 0;
  double wall_time_s = 0.0;
  std::optional<double> gap;
};

struct BenchmarkConfig {
  std::vector<Method> methods{Method::Hhrl};
  std::vector<Mapping> mappings{Mapping::Aps};  // for two-sided instances
  SolveConfig base;                             // seeds are derived per row from base.seed
  int jobs = 1;
};

// Every method (x mapping for two-sided instances) on every instance.
// Failures become error rows; the batch never aborts. Row order is
// deterministic: instance-major, then method, then mapping.
std::vector<BenchmarkRow> run_benchmark(const std::vector<YardInstance>& instances,
                                        const BenchmarkConfig& config);

// CSV with a fixed header; wall times are the only nondeterministic column.
std::string rows_to_csv(const std::vector<BenchmarkRow>& rows);

// Inverse of rows_to_csv. Throws on a malformed header or row.
std::vector<BenchmarkRow> rows_from_csv(const std::string& csv);

// Per-scale, per-method aggregates plus one-sided-vs-two-sided makespan
// comparisons, serialized as JSON.
std::string summarize(const std::vector<BenchmarkRow>& rows);

}  // namespace shuntyard
