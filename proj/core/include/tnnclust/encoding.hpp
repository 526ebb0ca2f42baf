#ifndef TNNCLUST_ENCODING_HPP
#define TNNCLUST_ENCODING_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tnnclust/data_io.hpp"
#include "tnnclust/rational.hpp"

namespace tnn {

/// Discrete spike time in [0, t_max]; t_max itself means "no spike".
using SpikeTime = std::int32_t;

/// Encoder output for one sample: E*l spike times, index i*E + j for
/// projected feature i and encoding neuron j.
using SpikeVector = std::vector<SpikeTime>;

/// Sparse ternary L x l projection with P(+1) = P(-1) = 1/6, P(0) = 2/3.
/// Entries are stored as {+1, 0, -1}; the conventional sqrt(3) factor is a
/// uniform scale that the per-column receptive-field normalization cancels.
class ProjectionMatrix {
 public:
  ProjectionMatrix() = default;
  ProjectionMatrix(std::size_t input_length, std::size_t reduced_length, std::uint64_t seed,
                   std::vector<std::int8_t> entries);

  std::size_t input_length() const { return input_length_; }
  std::size_t reduced_length() const { return reduced_length_; }
  std::uint64_t seed() const { return seed_; }
  std::int8_t at(std::size_t i, std::size_t j) const { return entries_[i * reduced_length_ + j]; }
  std::span<const std::int8_t> entries() const { return entries_; }

  friend bool operator==(const ProjectionMatrix&, const ProjectionMatrix&) = default;

 private:
  std::size_t input_length_ = 0;
  std::size_t reduced_length_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::int8_t> entries_;
};

/// Draws entry (i, j) from the projection stream of `seed`; throws if l > L.
ProjectionMatrix make_projection(std::size_t input_length, std::size_t reduced_length,
                                 std::uint64_t seed);

/// out_j = sum_i signal_i * P_ij.
std::vector<double> project(std::span<const double> signal, const ProjectionMatrix& projection);
Matrix project_all(const Matrix& signals, const ProjectionMatrix& projection);

/// Gaussian receptive fields for one projected feature.
struct FieldColumn {
  double x_min = 0.0;
  double x_max = 0.0;
  double sigma = 0.0;       // 0 marks a degenerate (constant) column
  std::vector<double> mu;   // E centers

  bool degenerate() const { return !(x_max > x_min); }
  friend bool operator==(const FieldColumn&, const FieldColumn&) = default;
};

class ReceptiveFieldBank {
 public:
  ReceptiveFieldBank() = default;
  ReceptiveFieldBank(int encoding_neurons, Rational gamma, std::vector<FieldColumn> columns);

  /// Bank with no observed data; every column's range is empty until the
  /// first `update_running_range`.
  static ReceptiveFieldBank empty(std::size_t reduced_length, int encoding_neurons, Rational gamma);

  int encoding_neurons() const { return encoding_neurons_; }
  const Rational& gamma() const { return gamma_; }
  std::size_t size() const { return columns_.size(); }
  const FieldColumn& column(std::size_t i) const { return columns_[i]; }
  FieldColumn& column(std::size_t i) { return columns_[i]; }

  /// Recomputes sigma and mu of column i from its current range.
  void refresh(std::size_t i);

  /// True before any data has been seen.
  bool unobserved() const;

  friend bool operator==(const ReceptiveFieldBank&, const ReceptiveFieldBank&) = default;

 private:
  int encoding_neurons_ = 0;
  Rational gamma_{3, 2};
  std::vector<FieldColumn> columns_;
};

/// sigma = gamma (x_max - x_min) / (E - 2); mu_j = x_min + (2j - 3)/2 sigma.
/// Uses per-column min/max over all rows of `projected`.
ReceptiveFieldBank fit_receptive_fields(const Matrix& projected, int encoding_neurons, Rational gamma);

/// Expands column ranges to include `projected`; returns true if any changed.
bool update_running_range(ReceptiveFieldBank& bank, std::span<const double> projected);

/// Round-half-away-from-zero of t_max (1 - exp(-((x - mu)/sigma)^2 / 2)).
/// A degenerate column fires neuron j = 2 at t = 0 and nothing else.
SpikeVector encode(std::span<const double> projected, const ReceptiveFieldBank& bank, int t_max);

/// Spike dump: one line per sample, space-separated, sentinel printed as t_max.
void write_spike_dump(std::ostream& out, std::span<const SpikeVector> spikes);

}  // namespace tnn

#endif  // TNNCLUST_ENCODING_HPP
