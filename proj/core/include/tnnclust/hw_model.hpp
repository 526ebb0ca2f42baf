#ifndef TNNCLUST_HW_MODEL_HPP
#define TNNCLUST_HW_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tnnclust/config.hpp"

namespace tnn {

/// One synthesized design point in 7 nm CMOS.
struct HwCalibrationPoint {
  std::uint64_t synapses = 0;
  double area_mm2 = 0.0;
  double latency_ns = 0.0;
  double power_mw = 0.0;
};

/// Largest, smallest and average designs of the reference 7 nm TNN estimates.
std::vector<HwCalibrationPoint> reference_calibration();

/// Reads whitespace-separated "synapses area_mm2 latency_ns power_mw" rows;
/// `#` starts a comment.
std::vector<HwCalibrationPoint> load_calibration(const std::filesystem::path& path);

/// area = area_offset + area_per_synapse * n, likewise for power;
/// latency = latency_base + latency_log_coeff * log2(n).
struct HwCoefficients {
  double area_per_synapse = 0.0;
  double area_offset = 0.0;
  double power_per_synapse = 0.0;
  double power_offset = 0.0;
  double latency_base = 0.0;
  double latency_log_coeff = 0.0;
};

struct HwEstimate {
  std::uint64_t synapse_count = 0;
  double area_mm2 = 0.0;
  double latency_ns = 0.0;
  double power_mw = 0.0;
  std::string node = "7nm";
};

/// C * E * l.
std::uint64_t synapse_count(const ValidatedConfig& cfg);

/// Area and power: affine least squares weighted by 1/y^2, i.e. minimizing
/// squared relative error, since the design points span two decades.
/// Latency: ordinary least squares against log2(n). Needs >= 2 points with
/// distinct synapse counts and positive measurements.
HwCoefficients fit_coefficients(std::span<const HwCalibrationPoint> calibration);

/// Throws std::domain_error when n falls below the calibrated range and an
/// estimate would not be positive; throws InputError for n = 0.
HwEstimate estimate(std::uint64_t synapses, const HwCoefficients& coeffs);
inline HwEstimate estimate(const ValidatedConfig& cfg, const HwCoefficients& coeffs) {
  return estimate(synapse_count(cfg), coeffs);
}

/// Fraction of synapses saved by projecting L inputs to E*l: 1 - E*l/L.
double synapse_reduction(int encoding_neurons, int reduced_length, int signal_length);

}  // namespace tnn

#endif  // TNNCLUST_HW_MODEL_HPP
