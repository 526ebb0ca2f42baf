#include "tnnclust/learning.hpp"

#include <algorithm>
#include <string>

#include "tnnclust/errors.hpp"

namespace tnn {

Rational stabilizer_pos(int w, int w_max) {
  return Rational(static_cast<std::int64_t>(w) * (2 * w_max - w),
                  static_cast<std::int64_t>(w_max) * w_max);
}

Rational stabilizer_neg(int w, int w_max) {
  return Rational(static_cast<std::int64_t>(w_max - w) * (w_max + w),
                  static_cast<std::int64_t>(w_max) * w_max);
}

int stdp_delta(SpikeTime t_in, SpikeTime t_out, int w, int w_max, SpikeTime t_max,
               const StdpParams& params, const SynapseDraws& draws) {
  const bool in_spike = t_in < t_max;
  const bool out_spike = t_out < t_max;
  // max of two {0,1} variables is their OR.
  const auto gated = [&](StdpVariable stabilizer, const Rational& p) {
    return draws.draw(stabilizer, p) || draws.draw(StdpVariable::kMin, params.pi_min);
  };
  if (in_spike && !out_spike) return draws.draw(StdpVariable::kSearch, params.pi_s) ? 1 : 0;
  if (in_spike && t_in <= t_out) {
    return draws.draw(StdpVariable::kCapture, params.pi_c) &&
                   gated(StdpVariable::kStabPos, stabilizer_pos(w, w_max))
               ? 1
               : 0;
  }
  if (in_spike) {
    return draws.draw(StdpVariable::kCapture, params.pi_c) &&
                   gated(StdpVariable::kStabNeg, stabilizer_neg(w, w_max))
               ? -1
               : 0;
  }
  if (out_spike) {
    return draws.draw(StdpVariable::kBackoff, params.pi_b) &&
                   gated(StdpVariable::kStabNeg, stabilizer_neg(w, w_max))
               ? -1
               : 0;
  }
  return 0;
}

double stdp_expectation(SpikeTime t_in, SpikeTime t_out, int w, int w_max, SpikeTime t_max,
                        const StdpParams& params) {
  const bool in_spike = t_in < t_max;
  const bool out_spike = t_out < t_max;
  const double p_min = params.pi_min.to_double();
  const auto gate = [p_min](const Rational& s) {
    const double ps = s.to_double();
    return 1.0 - (1.0 - ps) * (1.0 - p_min);
  };
  if (in_spike && !out_spike) return params.pi_s.to_double();
  if (in_spike && t_in <= t_out) return params.pi_c.to_double() * gate(stabilizer_pos(w, w_max));
  if (in_spike) return -params.pi_c.to_double() * gate(stabilizer_neg(w, w_max));
  if (out_spike) return -params.pi_b.to_double() * gate(stabilizer_neg(w, w_max));
  return 0.0;
}

std::size_t apply_stdp(TnnColumn& column, std::span<const SpikeTime> spikes,
                       std::span<const SpikeTime> wta_times, const StdpParams& params,
                       StdpRng& rng, std::span<std::uint8_t> changed) {
  const auto synapses = static_cast<std::size_t>(column.synapses());
  if (spikes.size() != synapses || wta_times.size() != static_cast<std::size_t>(column.neurons())) {
    throw InputError("apply_stdp: shape mismatch (" + std::to_string(spikes.size()) + " spikes, " +
                     std::to_string(wta_times.size()) + " outputs)");
  }
  auto weights = column.mutable_weights();
  if (!changed.empty() && changed.size() != weights.size()) {
    throw InputError("apply_stdp: change mask has wrong size");
  }
  const int w_max = column.w_max();
  const SpikeTime t_max = column.t_max();
  std::size_t n_changed = 0;
  for (int k = 0; k < column.neurons(); ++k) {
    const SpikeTime t_out = wta_times[static_cast<std::size_t>(k)];
    const std::size_t base = static_cast<std::size_t>(k) * synapses;
    for (std::size_t j = 0; j < synapses; ++j) {
      const SpikeTime t_in = spikes[j];
      // Neither spiking is the common case and never changes a weight.
      if (t_in >= t_max && t_out >= t_max) continue;
      const int w = weights[base + j];
      const int delta = stdp_delta(t_in, t_out, w, w_max, t_max, params,
                                   rng.synapse(k, static_cast<int>(j)));
      const int next = std::clamp(w + delta, 0, w_max);
      if (next != w) {
        weights[base + j] = static_cast<Weight>(next);
        ++n_changed;
        if (!changed.empty()) changed[base + j] = 1;
      }
    }
  }
  rng.advance();
  return n_changed;
}

}  // namespace tnn
