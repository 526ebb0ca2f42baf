#ifndef TNNCLUST_DATA_IO_HPP
#define TNNCLUST_DATA_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tnn {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Appends a row; the first row fixes the column count.
  void push_row(std::span<const double> values);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// N univariate series of common length L plus ground-truth labels remapped
/// to 0..num_classes-1. `raw_labels[c]` is the original label text of class c.
struct Dataset {
  std::string name;
  Matrix samples;
  std::vector<int> labels;
  std::vector<std::string> raw_labels;

  std::size_t size() const { return samples.rows(); }
  std::size_t length() const { return samples.cols(); }
  int num_classes() const { return static_cast<int>(raw_labels.size()); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Parses UCR text: one sample per line, first field the class label, the
/// remaining L fields the values. The delimiter (tab, comma, or whitespace)
/// is sniffed from the first non-empty line. Throws InputError on ragged rows,
/// non-numeric or non-finite cells, and empty input.
Dataset parse_ucr(std::string_view text, std::string name = "dataset");
Dataset load_ucr(const std::filesystem::path& path);

/// Parameters of the two-class sinusoid fixture.
struct TwoToneParams {
  double freq_a = 2.0;  // cycles per series, class 0
  double freq_b = 7.0;  // cycles per series, class 1
  double amplitude_jitter = 0.2;
  double phase_jitter = 0.3;  // radians, uniform in [-j, j]
  double noise_std = 0.15;
};

/// Two classes of noisy sinusoids, rows alternating class 0, 1, 0, 1...
/// Deterministic in `seed`. Requires L >= 16.
Dataset synth_two_tone(std::size_t n_per_class, std::size_t length, std::uint64_t seed,
                       const TwoToneParams& params = {});

enum class SplitMode { kTrainTestFiles, kWhole };

/// Returns (train view, evaluation view). kWhole returns `primary` twice;
/// kTrainTestFiles returns (primary, *test) with labels renumbered over the
/// union of both files' raw labels.
std::pair<Dataset, Dataset> split(const Dataset& primary, SplitMode mode,
                                  const Dataset* test = nullptr);

/// Per-row z-normalization; constant rows become all zeros.
Dataset znormalize(Dataset ds);

}  // namespace tnn

#endif  // TNNCLUST_DATA_IO_HPP
