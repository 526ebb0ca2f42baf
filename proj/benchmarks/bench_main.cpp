#include <benchmark/benchmark.h>

#include "tnnclust/config.hpp"
#include "tnnclust/data_io.hpp"
#include "tnnclust/encoding.hpp"
#include "tnnclust/learning.hpp"
#include "tnnclust/pipeline.hpp"
#include "tnnclust/tnn_core.hpp"

namespace {

using namespace tnn;

struct Fixture {
  Dataset ds;
  TrainedModel model;
  std::vector<double> projected;
  SpikeVector spikes;

  explicit Fixture(std::size_t length) : ds(synth_two_tone(16, length, 7)), model(make(ds)) {
    projected = project(ds.samples.row(0), model.projection);
    spikes = encode(projected, model.bank, model.config.t_max());
  }

  static TrainedModel make(const Dataset& ds) {
    TnnConfig cfg;
    cfg.num_clusters = 2;
    cfg.signal_length = static_cast<int>(ds.length());
    return initialize_model(ds, validate(cfg));
  }
};

void BM_Forward(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(forward(f.spikes, f.model.column));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.model.column.weights().size()));
}
BENCHMARK(BM_Forward)->Arg(128)->Arg(512)->Arg(2048);

void BM_ForwardStepped(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(forward_stepped(f.spikes, f.model.column));
}
BENCHMARK(BM_ForwardStepped)->Arg(128)->Arg(512);

void BM_Encode(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto proj = project(f.ds.samples.row(1), f.model.projection);
    benchmark::DoNotOptimize(encode(proj, f.model.bank, f.model.config.t_max()));
  }
}
BENCHMARK(BM_Encode)->Arg(128)->Arg(512)->Arg(2048);

void BM_ApplyStdp(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  const ForwardResult r = forward(f.spikes, f.model.column);
  StdpRng rng(1);
  for (auto _ : state) {
    apply_stdp(f.model.column, f.spikes, r.wta_times, f.model.config.stdp(), rng);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.model.column.weights().size()));
}
BENCHMARK(BM_ApplyStdp)->Arg(128)->Arg(512);

}  // namespace
BENCHMARK_MAIN();
