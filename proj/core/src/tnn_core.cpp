#include "tnnclust/tnn_core.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "tnnclust/errors.hpp"

namespace tnn {

TnnColumn::TnnColumn(int neurons, int synapses, int theta, int t_max, int w_max)
    : TnnColumn(neurons, synapses, theta, t_max, w_max,
                std::vector<Weight>(static_cast<std::size_t>(neurons) * static_cast<std::size_t>(synapses), 0)) {}

TnnColumn::TnnColumn(int neurons, int synapses, int theta, int t_max, int w_max,
                     std::vector<Weight> weights)
    : neurons_(neurons), synapses_(synapses), theta_(theta), t_max_(t_max), w_max_(w_max),
      weights_(std::move(weights)) {
  if (neurons_ < 1 || synapses_ < 1 || theta_ < 1 || t_max_ < 1 || w_max_ < 0 || w_max_ > 255) {
    throw InputError("column: invalid shape or parameters");
  }
  if (weights_.size() != static_cast<std::size_t>(neurons_) * static_cast<std::size_t>(synapses_)) {
    throw InputError("column: weight count does not match neurons x synapses");
  }
  for (Weight w : weights_) {
    if (w > w_max_) throw InputError("column: weight " + std::to_string(w) + " exceeds w_max");
  }
}

void TnnColumn::set_weight(int k, int j, int w) {
  if (w < 0 || w > w_max_) throw InputError("column: weight out of range");
  weights_[index(k, j)] = static_cast<Weight>(w);
}

namespace {

void check_input(std::span<const SpikeTime> spikes, const TnnColumn& column) {
  if (spikes.size() != static_cast<std::size_t>(column.synapses())) {
    throw InputError("forward: " + std::to_string(spikes.size()) + " input spikes for " +
                     std::to_string(column.synapses()) + " synapses");
  }
  for (SpikeTime t : spikes) {
    if (t < 0 || t > column.t_max()) throw InputError("forward: spike time out of [0, t_max]");
  }
}

ForwardResult make_result(const TnnColumn& column) {
  ForwardResult r;
  const auto c = static_cast<std::size_t>(column.neurons());
  r.raw_times.assign(c, column.t_max());
  r.wta_times.assign(c, column.t_max());
  r.potentials_at_end.assign(c, 0);
  r.t_max = column.t_max();
  return r;
}

}  // namespace

std::vector<int> potential_trace(std::span<const SpikeTime> spikes, const TnnColumn& column, int neuron) {
  check_input(spikes, column);
  std::vector<int> trace(static_cast<std::size_t>(column.t_max()), 0);
  const auto weights = column.row(neuron);
  for (int t = 0; t < column.t_max(); ++t) {
    int v = 0;
    for (std::size_t j = 0; j < spikes.size(); ++j) {
      // A no-spike input (t_max) is never reached inside the window.
      if (spikes[j] >= column.t_max()) continue;
      v += response(t - spikes[j], weights[j]);
    }
    trace[static_cast<std::size_t>(t)] = v;
  }
  return trace;
}

void apply_wta(ForwardResult& r, SpikeTime t_max) {
  if (r.raw_times.empty() || r.potentials_at_end.size() != r.raw_times.size()) {
    throw InputError("apply_wta: need one raw time and one potential per neuron");
  }
  const auto first = std::min_element(r.raw_times.begin(), r.raw_times.end());
  r.t_max = t_max;
  r.wta_times.assign(r.raw_times.size(), t_max);
  if (*first < t_max) {
    r.winner = static_cast<int>(first - r.raw_times.begin());
    r.wta_times[static_cast<std::size_t>(r.winner)] = *first;
  } else {
    const auto best = std::max_element(r.potentials_at_end.begin(), r.potentials_at_end.end());
    r.winner = static_cast<int>(best - r.potentials_at_end.begin());
  }
}

ForwardResult forward_stepped(std::span<const SpikeTime> spikes, const TnnColumn& column) {
  ForwardResult r = make_result(column);
  for (int k = 0; k < column.neurons(); ++k) {
    const auto trace = potential_trace(spikes, column, k);
    const auto ku = static_cast<std::size_t>(k);
    for (int t = 0; t < column.t_max(); ++t) {
      if (trace[static_cast<std::size_t>(t)] >= column.theta()) {
        r.raw_times[ku] = t;
        break;
      }
    }
    r.potentials_at_end[ku] = trace.back();
  }
  apply_wta(r, column.t_max());
  return r;
}

ForwardResult forward(std::span<const SpikeTime> spikes, const TnnColumn& column) {
  check_input(spikes, column);
  ForwardResult r = make_result(column);
  const int t_max = column.t_max();
  // slope[t] - slope[t-1]: each synapse adds +1 over t in [t_j + 1, t_j + w].
  std::vector<int> delta(static_cast<std::size_t>(t_max) + 1);
  for (int k = 0; k < column.neurons(); ++k) {
    std::fill(delta.begin(), delta.end(), 0);
    const auto weights = column.row(k);
    for (std::size_t j = 0; j < spikes.size(); ++j) {
      const int start = spikes[j] + 1;
      const int w = weights[j];
      if (w == 0 || start >= t_max) continue;
      delta[static_cast<std::size_t>(start)] += 1;
      const int stop = start + w;
      if (stop < t_max) delta[static_cast<std::size_t>(stop)] -= 1;
    }
    const auto ku = static_cast<std::size_t>(k);
    int slope = 0, v = 0;
    for (int t = 0; t < t_max; ++t) {
      slope += delta[static_cast<std::size_t>(t)];
      v += slope;
      if (v >= column.theta() && r.raw_times[ku] == t_max) r.raw_times[ku] = t;
    }
    r.potentials_at_end[ku] = v;
  }
  apply_wta(r, t_max);
  return r;
}

ClusterAssignment assign_cluster(const ForwardResult& result) {
  return {result.winner, result.wta_times[static_cast<std::size_t>(result.winner)]};
}

void write_column(std::ostream& out, const TnnColumn& column) {
  out << "tnn-column 1\n"
      << column.neurons() << ' ' << column.synapses() << ' ' << column.theta() << ' '
      << column.t_max() << ' ' << column.w_max() << '\n';
  for (int k = 0; k < column.neurons(); ++k) {
    const auto row = column.row(k);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      out << static_cast<int>(row[j]);
    }
    out << '\n';
  }
}

TnnColumn read_column(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "tnn-column" || version != 1) {
    throw InputError("column snapshot: bad header");
  }
  int c = 0, s = 0, theta = 0, t_max = 0, w_max = 0;
  if (!(in >> c >> s >> theta >> t_max >> w_max) || c < 1 || s < 1) {
    throw InputError("column snapshot: bad dimensions");
  }
  std::vector<Weight> weights;
  weights.reserve(static_cast<std::size_t>(c) * static_cast<std::size_t>(s));
  for (long long n = 0; n < static_cast<long long>(c) * s; ++n) {
    int w = 0;
    if (!(in >> w)) throw InputError("column snapshot: truncated weights");
    if (w < 0 || w > w_max) throw InputError("column snapshot: weight out of range");
    weights.push_back(static_cast<Weight>(w));
  }
  return TnnColumn(c, s, theta, t_max, w_max, std::move(weights));
}

}  // namespace tnn
