#include "tnnclust/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "tnnclust/errors.hpp"
#include "tnnclust/rng.hpp"

namespace tnn {

void Matrix::push_row(std::span<const double> values) {
  if (rows_ == 0 && data_.empty()) cols_ = values.size();
  if (values.size() != cols_) {
    throw InputError("row has " + std::to_string(values.size()) + " values, expected " +
                     std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

namespace {

std::optional<double> to_number(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\r')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) cell.remove_suffix(1);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  if (delim == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      const std::size_t j = line.find(' ', i);
      out.push_back(line.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i));
      i = j == std::string_view::npos ? line.size() : j;
    }
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  // Trailing delimiter produces one empty field.
  if (!out.empty() && out.back().find_first_not_of(" \r") == std::string_view::npos) out.pop_back();
  return out;
}

bool blank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

// Orders labels numerically when every label parses as a number.
std::vector<std::string> ordered_labels(std::vector<std::string> labels) {
  const bool numeric = std::all_of(labels.begin(), labels.end(),
                                   [](const std::string& s) { return to_number(s).has_value(); });
  std::sort(labels.begin(), labels.end(), [numeric](const std::string& a, const std::string& b) {
    if (numeric) {
      const double x = *to_number(a), y = *to_number(b);
      if (x != y) return x < y;
    }
    return a < b;
  });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

std::string canonical_label(std::string_view cell) {
  // "1", "1.0" and "+1" name the same class.
  if (auto v = to_number(cell)) {
    std::ostringstream s;
    s.precision(17);
    s << *v;
    return s.str();
  }
  std::string out(cell);
  std::erase(out, '\r');
  std::erase(out, ' ');
  return out;
}

void relabel(Dataset& ds, const std::vector<std::string>& row_labels,
             const std::vector<std::string>& classes) {
  std::map<std::string, int> index;
  for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = static_cast<int>(c);
  ds.raw_labels = classes;
  ds.labels.clear();
  for (const auto& l : row_labels) ds.labels.push_back(index.at(l));
}

}  // namespace

Dataset parse_ucr(std::string_view text, std::string name) {
  Dataset ds;
  ds.name = std::move(name);
  std::vector<std::string> row_labels;
  std::optional<char> delim;
  std::vector<double> values;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (blank(line)) continue;
    if (!delim) {
      delim = line.find('\t') != std::string_view::npos   ? '\t'
              : line.find(',') != std::string_view::npos ? ','
                                                         : ' ';
    }
    const auto fields = split_fields(line, *delim);
    if (fields.size() < 2) {
      throw InputError(ds.name + ":" + std::to_string(line_no) + ": row needs a label and at least one value");
    }
    values.clear();
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto v = to_number(fields[f]);
      if (!v || !std::isfinite(*v)) {
        throw InputError(ds.name + ":" + std::to_string(line_no) + ": field " + std::to_string(f + 1) +
                         " is not a finite number: '" + std::string(fields[f]) + "'");
      }
      values.push_back(*v);
    }
    if (!ds.samples.empty() && values.size() != ds.samples.cols()) {
      throw InputError(ds.name + ":" + std::to_string(line_no) + ": ragged row with " +
                       std::to_string(values.size()) + " values, expected " +
                       std::to_string(ds.samples.cols()));
    }
    ds.samples.push_row(values);
    row_labels.push_back(canonical_label(fields[0]));
  }
  if (ds.samples.empty()) throw InputError(ds.name + ": empty dataset");
  relabel(ds, row_labels, ordered_labels(row_labels));
  return ds;
}

Dataset load_ucr(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open dataset file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ucr(buf.str(), path.stem().string());
}

Dataset synth_two_tone(std::size_t n_per_class, std::size_t length, std::uint64_t seed,
                       const TwoToneParams& params) {
  if (length < 16) throw InputError("synth_two_tone: length must be >= 16");
  const CounterRng rng(seed);
  Dataset ds;
  ds.name = "two_tone";
  ds.raw_labels = {"0", "1"};
  std::vector<double> row(length);
  for (std::size_t n = 0; n < 2 * n_per_class; ++n) {
    const int cls = static_cast<int>(n % 2);
    const double freq = cls == 0 ? params.freq_a : params.freq_b;
    const double amp = 1.0 + params.amplitude_jitter * (2.0 * rng.uniform(Stream::kSynthetic, {n, 0}) - 1.0);
    const double phase = params.phase_jitter * (2.0 * rng.uniform(Stream::kSynthetic, {n, 1}) - 1.0);
    for (std::size_t t = 0; t < length; ++t) {
      // Box-Muller on two keyed uniforms.
      const double u1 = 1.0 - rng.uniform(Stream::kSynthetic, {n, 2, t});
      const double u2 = rng.uniform(Stream::kSynthetic, {n, 3, t});
      const double gauss = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      const double arg = 2.0 * std::numbers::pi * freq * static_cast<double>(t) / static_cast<double>(length);
      row[t] = amp * std::sin(arg + phase) + params.noise_std * gauss;
    }
    ds.samples.push_row(row);
    ds.labels.push_back(cls);
  }
  return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& primary, SplitMode mode, const Dataset* test) {
  if (mode == SplitMode::kWhole) return {primary, primary};
  if (test == nullptr) throw InputError("split: train_test_files mode needs a test dataset");
  if (test->length() != primary.length()) {
    throw InputError("split: train length " + std::to_string(primary.length()) +
                     " differs from test length " + std::to_string(test->length()));
  }
  std::vector<std::string> all = primary.raw_labels;
  all.insert(all.end(), test->raw_labels.begin(), test->raw_labels.end());
  const auto classes = ordered_labels(all);

  auto renumber = [&classes](const Dataset& in) {
    Dataset out = in;
    std::vector<std::string> rows;
    for (int l : in.labels) rows.push_back(in.raw_labels[static_cast<std::size_t>(l)]);
    relabel(out, rows, classes);
    return out;
  };
  return {renumber(primary), renumber(*test)};
}

Dataset znormalize(Dataset ds) {
  for (std::size_t r = 0; r < ds.size(); ++r) {
    auto row = ds.samples.row(r);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(row.size());
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(row.size()));
    for (double& v : row) v = sd > 0.0 ? (v - mean) / sd : 0.0;
  }
  return ds;
}

}  // namespace tnn
