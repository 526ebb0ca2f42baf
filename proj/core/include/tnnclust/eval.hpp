#ifndef TNNCLUST_EVAL_HPP
#define TNNCLUST_EVAL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tnnclust/data_io.hpp"

namespace tnn {

/// Rand Index as an exact ratio (agreeing pairs) / (all pairs).
struct RandIndex {
  std::uint64_t agreements = 0;  // alpha + beta
  std::uint64_t pairs = 0;       // N (N - 1) / 2

  double value() const { return static_cast<double>(agreements) / static_cast<double>(pairs); }
};

/// Closed form from the contingency table; labels and clusters may be any
/// non-negative ids. Throws for N < 2 or mismatched lengths.
RandIndex rand_index(std::span<const int> labels, std::span<const int> clusters);

/// Contingency counts: table[label][cluster].
std::vector<std::vector<std::uint64_t>> contingency_table(std::span<const int> labels,
                                                          std::span<const int> clusters);

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 100;
};

struct KMeansResult {
  std::vector<int> assignment;
  double wcss = 0.0;  // within-cluster sum of squared distances
  int iterations = 0;
};

/// Lloyd iterations from k distinct seeded data points; best WCSS over
/// restarts. Empty clusters keep their previous center.
KMeansResult kmeans_baseline(const Matrix& points, int k, std::uint64_t seed, KMeansOptions options = {});

/// tnn_ri / kmeans_ri; throws if the baseline is zero.
double normalized_ri(double tnn_ri, double kmeans_ri);

}  // namespace tnn

#endif  // TNNCLUST_EVAL_HPP
