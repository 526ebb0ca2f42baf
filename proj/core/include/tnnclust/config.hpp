#ifndef TNNCLUST_CONFIG_HPP
#define TNNCLUST_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "tnnclust/rational.hpp"

namespace tnn {

/// Bernoulli probabilities of the four STDP random variables.
struct StdpParams {
  Rational pi_s{1, 8};    // search: input spike, no output spike
  Rational pi_c{1, 2};    // capture / backoff when both spike
  Rational pi_b{3, 4};    // backoff: output spike without input spike
  Rational pi_min{1, 4};  // floor on the stabilizer gate

  friend bool operator==(const StdpParams&, const StdpParams&) = default;
};

/// Raw, user-editable hyperparameters. Optional fields are derived from the
/// others during validation when unset.
struct TnnConfig {
  int encoding_neurons = 8;
  int t_max = 16;
  int w_max = 7;
  Rational gamma{3, 2};
  std::optional<int> theta;           // default round(E*l*w_max/4)
  int num_clusters = 0;               // usually taken from the dataset
  int signal_length = 0;              // usually taken from the dataset
  std::optional<int> reduced_length;  // default floor(L/8)
  StdpParams stdp;
  std::uint64_t rng_seed = 0;
  int max_epochs = 50;
  Rational convergence_frac{1, 100};
  bool shuffle = true;

  friend bool operator==(const TnnConfig&, const TnnConfig&) = default;
};

/// A TnnConfig whose invariants have been checked and whose derived fields
/// are resolved. Immutable; only `validate` can produce one.
class ValidatedConfig {
 public:
  const TnnConfig& raw() const { return cfg_; }

  int encoding_neurons() const { return cfg_.encoding_neurons; }
  int t_max() const { return cfg_.t_max; }
  int w_max() const { return cfg_.w_max; }
  const Rational& gamma() const { return cfg_.gamma; }
  int theta() const { return *cfg_.theta; }
  int num_clusters() const { return cfg_.num_clusters; }
  int signal_length() const { return cfg_.signal_length; }
  int reduced_length() const { return *cfg_.reduced_length; }
  const StdpParams& stdp() const { return cfg_.stdp; }
  std::uint64_t rng_seed() const { return cfg_.rng_seed; }
  int max_epochs() const { return cfg_.max_epochs; }
  const Rational& convergence_frac() const { return cfg_.convergence_frac; }
  bool shuffle() const { return cfg_.shuffle; }

  /// E * l, the synapse count of every processing neuron.
  int synapses_per_neuron() const { return encoding_neurons() * reduced_length(); }

  friend bool operator==(const ValidatedConfig&, const ValidatedConfig&) = default;

 private:
  friend ValidatedConfig validate(const TnnConfig& cfg);
  explicit ValidatedConfig(TnnConfig cfg) : cfg_(std::move(cfg)) {}
  TnnConfig cfg_;
};

/// Checks every invariant and resolves l and theta. Throws ConfigError
/// naming the first violated invariant.
ValidatedConfig validate(const TnnConfig& cfg);
inline ValidatedConfig validate(const ValidatedConfig& cfg) { return validate(cfg.raw()); }

/// Sets one key from its textual value. Unknown keys throw ConfigError.
void apply_setting(TnnConfig& cfg, std::string_view key, std::string_view value);

/// Parses `key=value` lines with `#` comments on top of `base`.
TnnConfig parse_config(std::string_view text, TnnConfig base = {});
TnnConfig load_config_file(const std::filesystem::path& path, TnnConfig base = {});

/// Serializes every set field, one `key=value` per line, in a fixed order.
std::string to_config_text(const TnnConfig& cfg);

}  // namespace tnn

#endif  // TNNCLUST_CONFIG_HPP
