#ifndef TNNCLUST_TESTS_FIXTURES_HPP
#define TNNCLUST_TESTS_FIXTURES_HPP

#include <cstdint>

#include "tnnclust/config.hpp"
#include "tnnclust/data_io.hpp"
#include "tnnclust/tnn_core.hpp"

namespace fixture {

inline tnn::TnnConfig two_tone_config(std::uint64_t seed, int length = 64) {
  tnn::TnnConfig cfg;
  cfg.num_clusters = 2;
  cfg.signal_length = length;
  cfg.rng_seed = seed;
  return cfg;
}

// 100 training rows and an independent 100-row test draw for seed s.
inline tnn::Dataset two_tone_train(std::uint64_t s) { return tnn::synth_two_tone(50, 64, 1000 + s); }
inline tnn::Dataset two_tone_test(std::uint64_t s) { return tnn::synth_two_tone(50, 64, 2000 + s); }

inline double bimodal_fraction(const tnn::TnnColumn& column) {
  std::size_t hits = 0;
  const int wm = column.w_max();
  for (auto w : column.weights()) {
    if (w <= 1 || w >= wm - 1) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(column.weights().size());
}

}  // namespace fixture

#endif  // TNNCLUST_TESTS_FIXTURES_HPP
