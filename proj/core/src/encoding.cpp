#include "tnnclust/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "tnnclust/errors.hpp"
#include "tnnclust/rng.hpp"

namespace tnn {

ProjectionMatrix::ProjectionMatrix(std::size_t input_length, std::size_t reduced_length,
                                   std::uint64_t seed, std::vector<std::int8_t> entries)
    : input_length_(input_length),
      reduced_length_(reduced_length),
      seed_(seed),
      entries_(std::move(entries)) {
  if (entries_.size() != input_length_ * reduced_length_) {
    throw InputError("projection entries do not match " + std::to_string(input_length_) + "x" +
                     std::to_string(reduced_length_));
  }
}

ProjectionMatrix make_projection(std::size_t input_length, std::size_t reduced_length,
                                 std::uint64_t seed) {
  if (reduced_length == 0 || reduced_length > input_length) {
    throw InputError("projection: reduced length " + std::to_string(reduced_length) +
                     " must lie in [1, " + std::to_string(input_length) + "]");
  }
  const CounterRng rng(seed);
  std::vector<std::int8_t> entries(input_length * reduced_length);
  for (std::size_t i = 0; i < input_length; ++i) {
    for (std::size_t j = 0; j < reduced_length; ++j) {
      // Six equiprobable buckets: one for +1, one for -1, four for 0.
      const auto bucket = rng.below(6, Stream::kProjection, {i, j});
      entries[i * reduced_length + j] = bucket == 0 ? 1 : bucket == 1 ? -1 : 0;
    }
  }
  return ProjectionMatrix(input_length, reduced_length, seed, std::move(entries));
}

std::vector<double> project(std::span<const double> signal, const ProjectionMatrix& projection) {
  if (signal.size() != projection.input_length()) {
    throw InputError("project: signal length " + std::to_string(signal.size()) + " != " +
                     std::to_string(projection.input_length()));
  }
  const std::size_t ell = projection.reduced_length();
  std::vector<double> out(ell, 0.0);
  const auto entries = projection.entries();
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double x = signal[i];
    const std::int8_t* row = entries.data() + i * ell;
    for (std::size_t j = 0; j < ell; ++j) {
      if (row[j] > 0) out[j] += x;
      else if (row[j] < 0) out[j] -= x;
    }
  }
  return out;
}

Matrix project_all(const Matrix& signals, const ProjectionMatrix& projection) {
  Matrix out;
  for (std::size_t r = 0; r < signals.rows(); ++r) out.push_row(project(signals.row(r), projection));
  return out;
}

ReceptiveFieldBank::ReceptiveFieldBank(int encoding_neurons, Rational gamma,
                                       std::vector<FieldColumn> columns)
    : encoding_neurons_(encoding_neurons), gamma_(gamma), columns_(std::move(columns)) {
  if (encoding_neurons_ < 3) throw InputError("receptive fields need E >= 3");
}

ReceptiveFieldBank ReceptiveFieldBank::empty(std::size_t reduced_length, int encoding_neurons,
                                             Rational gamma) {
  FieldColumn blank;
  blank.x_min = std::numeric_limits<double>::infinity();
  blank.x_max = -std::numeric_limits<double>::infinity();
  blank.mu.assign(static_cast<std::size_t>(encoding_neurons), 0.0);
  return ReceptiveFieldBank(encoding_neurons, gamma, std::vector<FieldColumn>(reduced_length, blank));
}

bool ReceptiveFieldBank::unobserved() const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [](const FieldColumn& c) { return c.x_min > c.x_max; });
}

void ReceptiveFieldBank::refresh(std::size_t i) {
  FieldColumn& c = columns_[i];
  const auto e = static_cast<std::size_t>(encoding_neurons_);
  c.mu.resize(e);
  if (c.degenerate()) {
    c.sigma = 0.0;
    std::fill(c.mu.begin(), c.mu.end(), c.x_min);
    return;
  }
  c.sigma = gamma_.to_double() * (c.x_max - c.x_min) / static_cast<double>(encoding_neurons_ - 2);
  for (std::size_t j = 0; j < e; ++j) {
    c.mu[j] = c.x_min + (static_cast<double>(2 * static_cast<int>(j) - 3) / 2.0) * c.sigma;
  }
}

ReceptiveFieldBank fit_receptive_fields(const Matrix& projected, int encoding_neurons, Rational gamma) {
  if (projected.empty()) throw InputError("fit_receptive_fields: no samples");
  if (encoding_neurons < 3) throw InputError("fit_receptive_fields: E must be >= 3");
  std::vector<FieldColumn> columns(projected.cols());
  for (std::size_t i = 0; i < projected.cols(); ++i) {
    double lo = projected(0, i), hi = projected(0, i);
    for (std::size_t r = 0; r < projected.rows(); ++r) {
      const double v = projected(r, i);
      if (!std::isfinite(v)) throw InputError("fit_receptive_fields: non-finite value");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    columns[i].x_min = lo;
    columns[i].x_max = hi;
  }
  ReceptiveFieldBank bank(encoding_neurons, gamma, std::move(columns));
  for (std::size_t i = 0; i < bank.size(); ++i) bank.refresh(i);
  return bank;
}

bool update_running_range(ReceptiveFieldBank& bank, std::span<const double> projected) {
  if (projected.size() != bank.size()) {
    throw InputError("update_running_range: length " + std::to_string(projected.size()) +
                     " != " + std::to_string(bank.size()));
  }
  bool any = false;
  for (std::size_t i = 0; i < projected.size(); ++i) {
    FieldColumn& c = bank.column(i);
    const double v = projected[i];
    bool changed = false;
    if (v < c.x_min) {
      c.x_min = v;
      changed = true;
    }
    if (v > c.x_max) {
      c.x_max = v;
      changed = true;
    }
    if (changed) {
      bank.refresh(i);
      any = true;
    }
  }
  return any;
}

SpikeVector encode(std::span<const double> projected, const ReceptiveFieldBank& bank, int t_max) {
  if (projected.size() != bank.size()) {
    throw InputError("encode: length " + std::to_string(projected.size()) + " != " +
                     std::to_string(bank.size()));
  }
  const auto e = static_cast<std::size_t>(bank.encoding_neurons());
  const double scale = static_cast<double>(t_max);
  SpikeVector out(projected.size() * e, t_max);
  for (std::size_t i = 0; i < projected.size(); ++i) {
    const FieldColumn& c = bank.column(i);
    SpikeTime* slot = out.data() + i * e;
    if (c.degenerate()) {
      slot[2] = 0;
      continue;
    }
    for (std::size_t j = 0; j < e; ++j) {
      const double z = (projected[i] - c.mu[j]) / c.sigma;
      const double f = std::exp(-0.5 * z * z);
      // std::round is half-away-from-zero; the argument is never negative.
      slot[j] = static_cast<SpikeTime>(std::round(scale * (1.0 - f)));
    }
  }
  return out;
}

void write_spike_dump(std::ostream& out, std::span<const SpikeVector> spikes) {
  for (const auto& v : spikes) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out << ' ';
      out << v[k];
    }
    out << '\n';
  }
}

}  // namespace tnn
