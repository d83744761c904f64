#include <benchmark/benchmark.h>

#include "qauth/qsim.hpp"
#include "qauth/register.hpp"

using namespace qauth;
using namespace qauth::qsim;

static void BM_RyLayer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StateVector s(n);
  for (auto _ : state) {
    for (Qubit q = 0; q < n; ++q) s.apply(gate::Ry{0.3}, {q});
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RyLayer)->Arg(4)->Arg(12)->Arg(20);

static void BM_CnotChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StateVector s(n);
  s.apply(gate::H{}, {0});
  for (auto _ : state) {
    for (Qubit q = 0; q + 1 < n; ++q) s.apply(gate::Cnot{}, {q, q + 1});
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_CnotChain)->Arg(4)->Arg(12)->Arg(20);

static void BM_BellMeasure(benchmark::State& state) {
  Rng rng(1);
  for (auto _ : state) {
    StateVector s(4);
    s.prepare_pair(0, 1, BellKind::PhiPlus);
    s.prepare_pair(2, 3, BellKind::PhiPlus);
    benchmark::DoNotOptimize(s.measure_bell(1, 2, rng));
  }
}
BENCHMARK(BM_BellMeasure);

// Pairs prepared, entangled with a probe, measured and split back out.
static void BM_FactoredRegisterPositions(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  for (auto _ : state) {
    FactoredRegister reg(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto h = reg.allocate(3);
      reg.prepare_pair(h[0], h[1], BellKind::PhiPlus);
      const Handle ctl[2] = {h[0], h[2]};
      reg.apply(gate::Cnot{}, ctl);
      const Handle probe[1] = {h[2]};
      benchmark::DoNotOptimize(reg.measure(probe, basis::Diagonal{}, rng));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FactoredRegisterPositions)->Arg(8)->Arg(64)->Arg(256);
