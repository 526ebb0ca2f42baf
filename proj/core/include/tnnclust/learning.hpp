#ifndef TNNCLUST_LEARNING_HPP
#define TNNCLUST_LEARNING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tnnclust/config.hpp"
#include "tnnclust/rng.hpp"
#include "tnnclust/tnn_core.hpp"

namespace tnn {

/// The Bernoulli variables of the STDP rule.
enum class StdpVariable : std::uint64_t {
  kSearch = 0,      // X_s
  kCapture = 1,     // X_c
  kBackoff = 2,     // X_b
  kMin = 3,         // X_min
  kStabPos = 4,     // S_P(w)
  kStabNeg = 5,     // S_N(w)
};

/// Bernoulli draws for one synapse during one update step. Each
/// (step, neuron, synapse, variable) has its own keyed value, so synapses
/// can be updated in any order or in parallel with identical results.
class SynapseDraws {
 public:
  SynapseDraws(const CounterRng& rng, std::uint64_t step, int neuron, int synapse)
      : rng_(&rng), step_(step), neuron_(static_cast<std::uint64_t>(neuron)),
        synapse_(static_cast<std::uint64_t>(synapse)) {}

  bool draw(StdpVariable var, const Rational& p) const {
    return bernoulli(rng_->bits(Stream::kStdp, {step_, neuron_, synapse_, static_cast<std::uint64_t>(var)}), p);
  }

 private:
  const CounterRng* rng_;
  std::uint64_t step_;
  std::uint64_t neuron_;
  std::uint64_t synapse_;
};

/// Seeded Bernoulli source. `step` counts applied STDP updates and is part of
/// every draw's key; models persist it so streaming continues the sequence.
class StdpRng {
 public:
  explicit StdpRng(std::uint64_t seed, std::uint64_t step = 0) : rng_(seed), step_(step) {}

  std::uint64_t step() const { return step_; }
  void advance() { ++step_; }
  SynapseDraws synapse(int neuron, int synapse) const { return {rng_, step_, neuron, synapse}; }

  /// Sequential draws on a separate stream, for callers that just need bits.
  bool draw(const Rational& p) { return bernoulli(rng_.bits(Stream::kSequential, {sequential_++}), p); }

 private:
  CounterRng rng_;
  std::uint64_t step_;
  std::uint64_t sequential_ = 0;
};

/// P[S_P(w) = 1] = (w / w_max)(2 - w / w_max).
Rational stabilizer_pos(int w, int w_max);
/// P[S_N(w) = 1] = (1 - w / w_max)(1 + w / w_max).
Rational stabilizer_neg(int w, int w_max);

/// Weight change in {-1, 0, +1} for one synapse (t_max marks "no spike"):
///   in, no out:        +X_s
///   in <= out:         +X_c * max(S_P(w), X_min)
///   in >  out:         -X_c * max(S_N(w), X_min)
///   no in, out:        -X_b * max(S_N(w), X_min)
///   neither:            0
int stdp_delta(SpikeTime t_in, SpikeTime t_out, int w, int w_max, SpikeTime t_max,
               const StdpParams& params, const SynapseDraws& draws);

/// Expected value of stdp_delta before clamping.
double stdp_expectation(SpikeTime t_in, SpikeTime t_out, int w, int w_max, SpikeTime t_max,
                        const StdpParams& params);

/// Updates every synapse of every neuron against the post-WTA output times
/// and clamps to [0, w_max], then advances the rng step. Returns the number
/// of weights that changed; if `changed` is non-empty it must have one slot
/// per weight and gets 1 written where a weight changed.
std::size_t apply_stdp(TnnColumn& column, std::span<const SpikeTime> spikes,
                       std::span<const SpikeTime> wta_times, const StdpParams& params,
                       StdpRng& rng, std::span<std::uint8_t> changed = {});

}  // namespace tnn

#endif  // TNNCLUST_LEARNING_HPP
