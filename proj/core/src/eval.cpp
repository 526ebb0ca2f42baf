#include "tnnclust/eval.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tnnclust/errors.hpp"
#include "tnnclust/rng.hpp"

namespace tnn {

namespace {

std::uint64_t pairs_of(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

}  // namespace

std::vector<std::vector<std::uint64_t>> contingency_table(std::span<const int> labels,
                                                          std::span<const int> clusters) {
  if (labels.size() != clusters.size()) {
    throw InputError("contingency: " + std::to_string(labels.size()) + " labels vs " +
                     std::to_string(clusters.size()) + " clusters");
  }
  const auto nonneg = [](int v) { return v >= 0; };
  if (!std::all_of(labels.begin(), labels.end(), nonneg) ||
      !std::all_of(clusters.begin(), clusters.end(), nonneg)) {
    throw InputError("contingency: ids must be non-negative");
  }
  const auto rows = labels.empty() ? 0 : static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
  const auto cols = clusters.empty() ? 0 : static_cast<std::size_t>(*std::max_element(clusters.begin(), clusters.end())) + 1;
  std::vector<std::vector<std::uint64_t>> table(rows, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t n = 0; n < labels.size(); ++n) {
    ++table[static_cast<std::size_t>(labels[n])][static_cast<std::size_t>(clusters[n])];
  }
  return table;
}

RandIndex rand_index(std::span<const int> labels, std::span<const int> clusters) {
  if (labels.size() != clusters.size()) throw InputError("rand_index: length mismatch");
  if (labels.size() < 2) throw InputError("rand_index: needs at least two samples");
  const auto table = contingency_table(labels, clusters);
  const std::uint64_t n = labels.size();

  std::uint64_t same_both = 0, same_label = 0, same_cluster = 0;
  std::vector<std::uint64_t> col_sums(table.empty() ? 0 : table.front().size(), 0);
  for (const auto& row : table) {
    std::uint64_t row_sum = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      same_both += pairs_of(row[c]);
      row_sum += row[c];
      col_sums[c] += row[c];
    }
    same_label += pairs_of(row_sum);
  }
  for (auto s : col_sums) same_cluster += pairs_of(s);

  const std::uint64_t total = pairs_of(n);
  // alpha = same_both; beta = total - same_label - same_cluster + same_both.
  return {total + 2 * same_both - same_label - same_cluster, total};
}

KMeansResult kmeans_baseline(const Matrix& points, int k, std::uint64_t seed, KMeansOptions options) {
  const std::size_t n = points.rows();
  const std::size_t dim = points.cols();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw InputError("kmeans: k = " + std::to_string(k) + " must lie in [1, N = " + std::to_string(n) + "]");
  }
  if (options.restarts < 1) throw InputError("kmeans: restarts must be positive");
  const auto ku = static_cast<std::size_t>(k);
  const CounterRng rng(seed);

  auto dist2 = [&](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
    return s;
  };

  KMeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < options.restarts; ++restart) {
    // k distinct starting points by a partial keyed Fisher-Yates.
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < ku; ++i) {
      const auto j = i + rng.below(n - i, Stream::kKMeans, {static_cast<std::uint64_t>(restart), i});
      std::swap(pool[i], pool[j]);
    }
    Matrix centers(ku, dim);
    for (std::size_t c = 0; c < ku; ++c) {
      std::copy_n(points.row(pool[c]).begin(), dim, centers.row(c).begin());
    }

    std::vector<int> assign(n, -1);
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        int arg = 0;
        double bestd = dist2(points.row(i), centers.row(0));
        for (std::size_t c = 1; c < ku; ++c) {
          const double d = dist2(points.row(i), centers.row(c));
          if (d < bestd) {
            bestd = d;
            arg = static_cast<int>(c);
          }
        }
        if (assign[i] != arg) {
          assign[i] = arg;
          moved = true;
        }
      }
      if (!moved) break;
      Matrix sums(ku, dim);
      std::vector<std::size_t> counts(ku, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(assign[i]);
        ++counts[c];
        auto s = sums.row(c);
        const auto p = points.row(i);
        for (std::size_t d = 0; d < dim; ++d) s[d] += p[d];
      }
      for (std::size_t c = 0; c < ku; ++c) {
        if (counts[c] == 0) continue;
        auto center = centers.row(c);
        const auto s = sums.row(c);
        for (std::size_t d = 0; d < dim; ++d) center[d] = s[d] / static_cast<double>(counts[c]);
      }
    }

    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) wcss += dist2(points.row(i), centers.row(static_cast<std::size_t>(assign[i])));
    if (wcss < best.wcss) {
      best.assignment = assign;
      best.wcss = wcss;
      best.iterations = iter;
    }
  }
  return best;
}

double normalized_ri(double tnn_ri, double kmeans_ri) {
  if (!(kmeans_ri > 0.0)) throw InputError("normalized_ri: K-means Rand Index must be positive");
  return tnn_ri / kmeans_ri;
}

}  // namespace tnn
