#include <benchmark/benchmark.h>

#include <string>

#include "shuntyard/decomposition.hpp"
#include "shuntyard/instgen.hpp"
#include "shuntyard/oracle.hpp"
#include "shuntyard/preprocessing.hpp"
#include "shuntyard/qlearning.hpp"
#include "shuntyard/yard.hpp"

using namespace shuntyard;

namespace {

// A mid-size yard exercised by most benches below; seed picked for a
// representative 12-group layout.
const YardInstance& medium_instance() {
  static const YardInstance inst = generate_instance(Scale::Medium, 42);
  return inst;
}

const YardInstance& small_instance() {
  static const YardInstance inst = generate_instance(Scale::Small, 18);
  return inst;
}

}  // namespace

static void BM_enumerate_moves(benchmark::State& state) {
  const auto& inst = medium_instance();
  std::size_t moves = 0;
  for (auto _ : state) {
    const auto actions = enumerate_actions(inst.initial, inst.cost, {End::A});
    benchmark::DoNotOptimize(actions);
    moves += actions.size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(moves));
}
BENCHMARK(BM_enumerate_moves);

static void BM_apply_move(benchmark::State& state) {
  const auto& inst = medium_instance();
  const Move move = enumerate_actions(inst.initial, inst.cost, {End::A}).front();
  for (auto _ : state) {
    auto next = apply_move(inst.initial, move, inst.cost);
    benchmark::DoNotOptimize(next);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_apply_move);

static void BM_standardize(benchmark::State& state) {
  const auto& inst = medium_instance();
  for (auto _ : state) {
    const auto pre = preprocess(inst.initial, inst.cost, inst.num_departure, 3);
    benchmark::DoNotOptimize(pre.standardized);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_standardize);

static void BM_split_and_combine(benchmark::State& state) {
  const YardInstance ts = to_two_sided(medium_instance());
  for (auto _ : state) {
    const auto split = split_aps(ts);
    benchmark::DoNotOptimize(split.allocation);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_split_and_combine);

// Items are environment steps, so items/s is the core training rate.
static void BM_train_steps(benchmark::State& state) {
  const auto& inst = small_instance();
  const Environment env(inst.initial, inst.cost, inst.num_departure);
  TrainConfig cfg;
  cfg.episodes = static_cast<std::uint64_t>(state.range(0));
  cfg.bonus = 15.0;
  cfg.seed = 7;
  std::int64_t steps = 0;
  for (auto _ : state) {
    const auto result = train(env, cfg);
    for (const auto& ep : result.episodes) steps += ep.steps;
    benchmark::DoNotOptimize(result.table);
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_train_steps)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_greedy_rollout(benchmark::State& state) {
  const auto& inst = small_instance();
  const Environment env(inst.initial, inst.cost, inst.num_departure);
  TrainConfig cfg;
  cfg.episodes = 5000;
  cfg.bonus = 15.0;
  cfg.seed = 7;
  const auto trained = train(env, cfg);
  for (auto _ : state) {
    const auto rollout = greedy_rollout(trained.table, env, 11);
    benchmark::DoNotOptimize(rollout.cost);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_greedy_rollout);

// Items are node expansions, so items/s is the search rate.
static void BM_exact_search(benchmark::State& state) {
  const auto& inst = small_instance();
  std::int64_t expanded = 0;
  for (auto _ : state) {
    const auto result = optimal_cost(inst);
    expanded += static_cast<std::int64_t>(result.expanded);
    benchmark::DoNotOptimize(result.cost);
  }
  state.SetItemsProcessed(expanded);
}
BENCHMARK(BM_exact_search)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
