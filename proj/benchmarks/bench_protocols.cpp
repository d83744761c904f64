#include <benchmark/benchmark.h>

#include <string>

#include "qauth/adversary.hpp"
#include "qauth/protocols.hpp"

using namespace qauth;

namespace {

const char* const kIds[] = {"curty_santos", "li_zhang", "kanamori", "zeng_guo", "li_barnum", "zhang_li_guo"};

}  // namespace

// range(0) indexes kIds, range(1) is the size used for n and m.
static void BM_HonestRun(benchmark::State& state) {
  const std::string id = kIds[state.range(0)];
  const auto x = static_cast<std::size_t>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto r = protocols::run(id, protocols::Params{.n = x, .m = x, .s = x}, seed++);
    benchmark::DoNotOptimize(r.outcome.accepted);
  }
  state.SetLabel(id);
}
BENCHMARK(BM_HonestRun)->ArgsProduct({{0, 1, 2, 3, 4, 5}, {4, 16}});

static void BM_InterceptRun(benchmark::State& state) {
  const std::string id = kIds[state.range(0)];
  const auto eve = adversary::make_intercept(adversary::UniformRandomBasis{});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto r = protocols::run(id, protocols::Params{}, seed++, eve);
    benchmark::DoNotOptimize(r.outcome.eavesdrop_detected);
  }
  state.SetLabel(id);
}
BENCHMARK(BM_InterceptRun)->DenseRange(0, 5);

static void BM_Analyze(benchmark::State& state) {
  const std::string id = kIds[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(protocols::analyze(id).agreement);
  state.SetLabel(id);
}
BENCHMARK(BM_Analyze)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

static void BM_DetectionRate(benchmark::State& state) {
  const auto eve = adversary::make_intercept(adversary::UniformRandomBasis{});
  for (auto _ : state)
    benchmark::DoNotOptimize(adversary::detection_rate("kanamori", protocols::Params{.n = 4}, eve, 1000, 1).point);
}
BENCHMARK(BM_DetectionRate)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
