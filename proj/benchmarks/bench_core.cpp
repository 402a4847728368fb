#include <benchmark/benchmark.h>

#include <random>

#include "lamogen/compose.hpp"
#include "lamogen/detect.hpp"
#include "lamogen/metrics.hpp"
#include "lamogen/score.hpp"
#include "lamogen/synth.hpp"

using namespace lamogen;

namespace {

MotionSequence walk200() {
  return synth_walk(16, Side::L, 0.6, 20); // 200 frames
}

std::vector<int> random_tokens(std::mt19937_64& rng, int len) {
  std::vector<int> v(len);
  for (int& x : v) x = std::uniform_int_distribution<int>(0, 3)(rng);
  return v;
}

} // namespace

static void BM_Detect200(benchmark::State& state) {
  MotionSequence m = walk200();
  ThresholdConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(detect(m, cfg));
}
BENCHMARK(BM_Detect200);

static void BM_Evaluate200(benchmark::State& state) {
  ThresholdConfig cfg;
  InstanceSequence gt = detect(walk200(), cfg);
  InstanceSequence gen = detect(synth_walk(16, Side::R, 0.6, 20), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(gt, gen));
}
BENCHMARK(BM_Evaluate200);

static void BM_LcsFrameWise(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto a = random_tokens(rng, static_cast<int>(state.range(0)));
  auto b = random_tokens(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lcs_length(a, b));
}
BENCHMARK(BM_LcsFrameWise)->Arg(60)->Arg(200)->Arg(1000);

static void BM_Decode(benchmark::State& state) {
  InstanceSequence inst = script_to_instances(random_script(5), 20);
  Skeleton skel = Skeleton::standard();
  for (auto _ : state) benchmark::DoNotOptimize(decode(inst, skel));
}
BENCHMARK(BM_Decode);

static void BM_ScoreRoundTrip(benchmark::State& state) {
  InstanceSequence inst = detect(walk200(), ThresholdConfig{});
  for (auto _ : state) {
    LabanScore score = instances_to_score(inst);
    benchmark::DoNotOptimize(score_to_instances(score, inst.frames(), inst.fps()));
  }
}
BENCHMARK(BM_ScoreRoundTrip);

static void BM_DbQuery(benchmark::State& state) {
  std::vector<CDRecord> records;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    CDRecord r;
    r.script = random_script(seed);
    r.caption = r.script.caption;
    records.push_back(r);
  }
  Database db = db_build(std::move(records));
  RetrievalConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(db_query(db, "random motion 42", cfg));
}
BENCHMARK(BM_DbQuery);

BENCHMARK_MAIN();
