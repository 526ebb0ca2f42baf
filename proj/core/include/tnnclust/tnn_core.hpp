#ifndef TNNCLUST_TNN_CORE_HPP
#define TNNCLUST_TNN_CORE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tnnclust/encoding.hpp"

namespace tnn {

using Weight = std::uint8_t;

/// One column of C ramp-no-leak neurons, each with S synapses of integer
/// weight in [0, w_max]. Weights are row-major: neuron k, synapse j.
class TnnColumn {
 public:
  TnnColumn() = default;
  TnnColumn(int neurons, int synapses, int theta, int t_max, int w_max);
  TnnColumn(int neurons, int synapses, int theta, int t_max, int w_max, std::vector<Weight> weights);

  int neurons() const { return neurons_; }
  int synapses() const { return synapses_; }
  int theta() const { return theta_; }
  int t_max() const { return t_max_; }
  int w_max() const { return w_max_; }

  Weight weight(int k, int j) const { return weights_[index(k, j)]; }
  void set_weight(int k, int j, int w);
  std::span<const Weight> row(int k) const {
    return {weights_.data() + index(k, 0), static_cast<std::size_t>(synapses_)};
  }
  std::span<const Weight> weights() const { return weights_; }
  std::span<Weight> mutable_weights() { return weights_; }

  friend bool operator==(const TnnColumn&, const TnnColumn&) = default;

 private:
  std::size_t index(int k, int j) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(synapses_) + static_cast<std::size_t>(j);
  }

  int neurons_ = 0;
  int synapses_ = 0;
  int theta_ = 1;
  int t_max_ = 1;
  int w_max_ = 1;
  std::vector<Weight> weights_;
};

struct ForwardResult {
  std::vector<SpikeTime> raw_times;  // first threshold crossing per neuron, t_max if none
  std::vector<SpikeTime> wta_times;  // after 1-WTA: at most one entry below t_max
  int winner = 0;
  std::vector<int> potentials_at_end;  // v_k(t_max - 1)
  SpikeTime t_max = 0;

  bool spiked() const { return wta_times[static_cast<std::size_t>(winner)] < t_max; }
  friend bool operator==(const ForwardResult&, const ForwardResult&) = default;
};

/// Ramp-no-leak response: 0 before the input spike, then rises by one per
/// step until it saturates at w.
constexpr int response(int t, int w) { return t < 0 ? 0 : (t < w ? t : w); }

/// v_k(t) for t = 0..t_max-1 by direct summation of `response`.
std::vector<int> potential_trace(std::span<const SpikeTime> spikes, const TnnColumn& column, int neuron);

/// Output-equivalent fast path: per-neuron slope difference arrays give the
/// whole potential trace in O(S + t_max).
ForwardResult forward(std::span<const SpikeTime> spikes, const TnnColumn& column);

/// Normative stepped semantics; used to cross-check `forward`.
ForwardResult forward_stepped(std::span<const SpikeTime> spikes, const TnnColumn& column);

/// 1-WTA over raw times: the earliest spike survives, lowest index on ties.
/// Without any spike the winner is the argmax of the final potentials.
void apply_wta(ForwardResult& result, SpikeTime t_max);

struct ClusterAssignment {
  int cluster = 0;
  SpikeTime confidence_time = 0;  // winner's post-WTA time; t_max when nothing fired

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

ClusterAssignment assign_cluster(const ForwardResult& result);

/// Plain-text column snapshot:
///   tnn-column 1
///   <C> <S> <theta> <t_max> <w_max>
///   C lines of S weights
void write_column(std::ostream& out, const TnnColumn& column);
TnnColumn read_column(std::istream& in);

}  // namespace tnn

#endif  // TNNCLUST_TNN_CORE_HPP
