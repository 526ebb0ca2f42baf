#include "tnnclust/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tnnclust/errors.hpp"
#include "tnnclust/learning.hpp"
#include "tnnclust/rng.hpp"

namespace tnn {

namespace {

void check_length(const TrainedModel& model, std::size_t length) {
  if (length != model.projection.input_length()) {
    throw InputError("signal length " + std::to_string(length) + " does not match model length " +
                     std::to_string(model.projection.input_length()));
  }
}

// Fisher-Yates with keyed draws, so the permutation depends only on
// (seed, epoch) and not on the standard library.
std::vector<std::size_t> epoch_order(std::size_t n, const CounterRng& rng, int epoch, bool shuffle) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!shuffle) return order;
  for (std::size_t i = n; i > 1; --i) {
    const auto j = rng.below(i, Stream::kShuffle, {static_cast<std::uint64_t>(epoch), i});
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

}  // namespace

TrainedModel initialize_model(const Dataset& train_ds, const ValidatedConfig& cfg) {
  if (train_ds.size() == 0) throw InputError("train: empty dataset");
  if (static_cast<int>(train_ds.length()) != cfg.signal_length()) {
    throw InputError("train: dataset length " + std::to_string(train_ds.length()) +
                     " does not match signal_length " + std::to_string(cfg.signal_length()));
  }
  TrainedModel model{
      .projection = make_projection(train_ds.length(), static_cast<std::size_t>(cfg.reduced_length()),
                                    cfg.rng_seed()),
      .bank = {},
      .column = TnnColumn(cfg.num_clusters(), cfg.synapses_per_neuron(), cfg.theta(), cfg.t_max(),
                          cfg.w_max()),
      .config = cfg,
  };
  model.bank = fit_receptive_fields(project_all(train_ds.samples, model.projection),
                                    cfg.encoding_neurons(), cfg.gamma());

  const CounterRng rng(cfg.rng_seed());
  const auto levels = static_cast<std::uint64_t>(cfg.w_max()) + 1;
  auto weights = model.column.mutable_weights();
  for (int k = 0; k < model.column.neurons(); ++k) {
    for (int j = 0; j < model.column.synapses(); ++j) {
      const auto idx = static_cast<std::size_t>(k) * static_cast<std::size_t>(model.column.synapses()) +
                       static_cast<std::size_t>(j);
      weights[idx] = static_cast<Weight>(
          rng.below(levels, Stream::kWeightInit, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(j)}));
    }
  }
  return model;
}

TrainResult train(const Dataset& train_ds, const ValidatedConfig& cfg,
                  const std::function<void(const EpochStats&)>& on_epoch) {
  TrainResult result{initialize_model(train_ds, cfg), {}};
  TrainedModel& model = result.model;

  std::vector<SpikeVector> spikes;
  spikes.reserve(train_ds.size());
  for (std::size_t r = 0; r < train_ds.size(); ++r) {
    spikes.push_back(encode(project(train_ds.samples.row(r), model.projection), model.bank, cfg.t_max()));
  }

  const CounterRng shuffle_rng(cfg.rng_seed());
  StdpRng stdp_rng(cfg.rng_seed(), model.stdp_step);
  const std::size_t total = model.column.weights().size();
  std::vector<std::uint8_t> touched(total);
  std::vector<Weight> start(total);
  const double threshold = cfg.convergence_frac().to_double();
  const int w_max = cfg.w_max();
  const auto high = [w_max](Weight w) { return 2 * static_cast<int>(w) > w_max; };

  for (int epoch = 1; epoch <= cfg.max_epochs(); ++epoch) {
    std::fill(touched.begin(), touched.end(), 0);
    std::copy(model.column.weights().begin(), model.column.weights().end(), start.begin());
    EpochStats stats;
    stats.epoch = epoch;
    stats.weights_total = total;
    stats.win_counts.assign(static_cast<std::size_t>(cfg.num_clusters()), 0);
    std::size_t spiking = 0;

    for (std::size_t idx : epoch_order(train_ds.size(), shuffle_rng, epoch, cfg.shuffle())) {
      const ForwardResult fr = forward(spikes[idx], model.column);
      ++stats.win_counts[static_cast<std::size_t>(fr.winner)];
      if (fr.spiked()) ++spiking;
      apply_stdp(model.column, spikes[idx], fr.wta_times, cfg.stdp(), stdp_rng, touched);
    }

    const auto final_weights = model.column.weights();
    for (std::size_t i = 0; i < total; ++i) stats.weights_changed += high(start[i]) != high(final_weights[i]);
    stats.weights_touched = static_cast<std::size_t>(std::count(touched.begin(), touched.end(), 1));
    stats.weights_changed_frac = static_cast<double>(stats.weights_changed) / static_cast<double>(total);
    stats.weights_touched_frac = static_cast<double>(stats.weights_touched) / static_cast<double>(total);
    stats.spike_rate = static_cast<double>(spiking) / static_cast<double>(train_ds.size());
    model.epochs_run = epoch;
    model.stdp_step = stdp_rng.step();
    result.epochs.push_back(stats);
    if (on_epoch) on_epoch(stats);
    if (stats.weights_changed_frac < threshold) {
      model.converged = true;
      break;
    }
  }
  return result;
}

ClusterAssignment predict_one(const TrainedModel& model, std::span<const double> signal) {
  check_length(model, signal.size());
  const SpikeVector spikes = encode(project(signal, model.projection), model.bank, model.column.t_max());
  return assign_cluster(forward(spikes, model.column));
}

Predictions predict(const TrainedModel& model, const Dataset& ds) {
  check_length(model, ds.length());
  Predictions out;
  out.clusters.reserve(ds.size());
  out.confidence_times.reserve(ds.size());
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto a = predict_one(model, ds.samples.row(r));
    out.clusters.push_back(a.cluster);
    out.confidence_times.push_back(a.confidence_time);
  }
  return out;
}

ClusterAssignment stream_step(TrainedModel& model, std::span<const double> signal, bool learn) {
  check_length(model, signal.size());
  for (double v : signal) {
    if (!std::isfinite(v)) throw InputError("stream: non-finite input value");
  }
  if (!learn) return predict_one(model, signal);

  const auto projected = project(signal, model.projection);
  update_running_range(model.bank, projected);
  const SpikeVector spikes = encode(projected, model.bank, model.column.t_max());
  const ForwardResult fr = forward(spikes, model.column);
  StdpRng rng(model.config.rng_seed(), model.stdp_step);
  apply_stdp(model.column, spikes, fr.wta_times, model.config.stdp(), rng);
  model.stdp_step = rng.step();
  return assign_cluster(fr);
}

}  // namespace tnn
