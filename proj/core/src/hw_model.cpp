#include "tnnclust/hw_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tnnclust/errors.hpp"

namespace tnn {

std::vector<HwCalibrationPoint> reference_calibration() {
  return {
      {6750, 0.033, 6.50, 0.155},
      {130, 0.001, 3.59, 0.002},
      {970, 0.005, 5.07, 0.022},
  };
}

std::vector<HwCalibrationPoint> load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open calibration file: " + path.string());
  std::vector<HwCalibrationPoint> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    HwCalibrationPoint p;
    if (!(fields >> p.synapses)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": bad calibration row");
    }
    if (!(fields >> p.area_mm2 >> p.latency_ns >> p.power_mw)) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 4 columns");
    }
    out.push_back(p);
  }
  return out;
}

std::uint64_t synapse_count(const ValidatedConfig& cfg) {
  return static_cast<std::uint64_t>(cfg.num_clusters()) *
         static_cast<std::uint64_t>(cfg.encoding_neurons()) *
         static_cast<std::uint64_t>(cfg.reduced_length());
}

namespace {

struct Line {
  double slope;
  double intercept;
};

Line weighted_line(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

HwCoefficients fit_coefficients(std::span<const HwCalibrationPoint> calibration) {
  if (calibration.size() < 2) throw InputError("fit_coefficients: need at least two calibration points");
  std::vector<double> n, logn, area, power, latency, w_area, w_power, unit;
  for (const auto& p : calibration) {
    if (p.synapses == 0 || !(p.area_mm2 > 0) || !(p.power_mw > 0) || !(p.latency_ns > 0)) {
      throw InputError("fit_coefficients: calibration values must be positive");
    }
    n.push_back(static_cast<double>(p.synapses));
    logn.push_back(std::log2(static_cast<double>(p.synapses)));
    area.push_back(p.area_mm2);
    power.push_back(p.power_mw);
    latency.push_back(p.latency_ns);
    w_area.push_back(1.0 / (p.area_mm2 * p.area_mm2));
    w_power.push_back(1.0 / (p.power_mw * p.power_mw));
    unit.push_back(1.0);
  }
  bool distinct = false;
  for (double v : n) distinct = distinct || v != n.front();
  if (!distinct) throw InputError("fit_coefficients: calibration needs distinct synapse counts");

  const Line a = weighted_line(n, area, w_area);
  const Line p = weighted_line(n, power, w_power);
  const Line t = weighted_line(logn, latency, unit);
  return {a.slope, a.intercept, p.slope, p.intercept, t.intercept, t.slope};
}

HwEstimate estimate(std::uint64_t synapses, const HwCoefficients& c) {
  if (synapses == 0) throw InputError("hwcost: synapse count must be positive");
  const double n = static_cast<double>(synapses);
  HwEstimate e;
  e.synapse_count = synapses;
  e.area_mm2 = c.area_offset + c.area_per_synapse * n;
  e.power_mw = c.power_offset + c.power_per_synapse * n;
  e.latency_ns = c.latency_base + c.latency_log_coeff * std::log2(n);
  if (!(e.area_mm2 > 0) || !(e.power_mw > 0) || !(e.latency_ns > 0)) {
    throw std::domain_error("hwcost: " + std::to_string(synapses) +
                            " synapses is below the calibrated range (non-positive estimate)");
  }
  return e;
}

double synapse_reduction(int encoding_neurons, int reduced_length, int signal_length) {
  return 1.0 - static_cast<double>(encoding_neurons) * reduced_length / static_cast<double>(signal_length);
}

}  // namespace tnn
