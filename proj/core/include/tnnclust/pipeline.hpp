#ifndef TNNCLUST_PIPELINE_HPP
#define TNNCLUST_PIPELINE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "tnnclust/config.hpp"
#include "tnnclust/data_io.hpp"
#include "tnnclust/encoding.hpp"
#include "tnnclust/tnn_core.hpp"

namespace tnn {

struct TrainedModel {
  ProjectionMatrix projection;
  ReceptiveFieldBank bank;
  TnnColumn column;
  ValidatedConfig config;
  int epochs_run = 0;
  bool converged = false;
  std::uint64_t stdp_step = 0;  // STDP updates applied so far

  friend bool operator==(const TrainedModel&, const TrainedModel&) = default;
};

/// `weights_changed` counts synapses whose binarized weight (w > w_max/2)
/// differs between the start and the end of the epoch; this is the
/// convergence metric. Single-step jitter at either end of the range (the
/// weights are bimodal) shows up only in `weights_touched`.
struct EpochStats {
  int epoch = 0;                  // 1-based
  std::size_t weights_total = 0;
  std::size_t weights_changed = 0;
  double weights_changed_frac = 0.0;
  std::size_t weights_touched = 0;  // changed at least once during the epoch
  double weights_touched_frac = 0.0;
  double spike_rate = 0.0;        // fraction of samples with a post-WTA spike
  std::vector<std::size_t> win_counts;
};

struct TrainResult {
  TrainedModel model;
  std::vector<EpochStats> epochs;
};

/// Projection, receptive fields fitted on `train_ds`, and seeded uniform
/// initial weights in [0, w_max]; no learning yet.
TrainedModel initialize_model(const Dataset& train_ds, const ValidatedConfig& cfg);

/// Epochs of {seeded shuffle, forward, STDP} until weights_changed_frac drops
/// below cfg.convergence_frac or cfg.max_epochs is reached. `on_epoch` sees each epoch's stats as it ends.
TrainResult train(const Dataset& train_ds, const ValidatedConfig& cfg,
                  const std::function<void(const EpochStats&)>& on_epoch = {});

struct Predictions {
  std::vector<int> clusters;
  std::vector<SpikeTime> confidence_times;
};

/// Pure inference with frozen ranges and weights.
Predictions predict(const TrainedModel& model, const Dataset& ds);
ClusterAssignment predict_one(const TrainedModel& model, std::span<const double> signal);

/// Streaming: with `learn`, widen receptive-field ranges, then encode,
/// forward, assign, and apply STDP. Without it the model is not modified.
ClusterAssignment stream_step(TrainedModel& model, std::span<const double> signal, bool learn);

/// Versioned text model file; doubles are written with 17 significant
/// digits so that load(save(m)) == m.
void save_model(std::ostream& out, const TrainedModel& model);
TrainedModel load_model(std::istream& in);

}  // namespace tnn

#endif  // TNNCLUST_PIPELINE_HPP
