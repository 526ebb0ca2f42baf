#include "tnnclust/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tnnclust/errors.hpp"

namespace tnn {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid config: " + what);
}

bool in_unit_interval(const Rational& p) { return Rational(0, 1) <= p && p <= Rational(1, 1); }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view value) {
  Int out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw ConfigError("config key '" + std::string(key) + "': not an integer: '" +
                      std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + std::string(key) + "': not a boolean: '" +
                    std::string(value) + "'");
}

Rational parse_rational(std::string_view key, std::string_view value) {
  try {
    return Rational::parse(value);
  } catch (const InputError&) {
    throw ConfigError("config key '" + std::string(key) + "': not a rational: '" +
                      std::string(value) + "'");
  }
}

}  // namespace

ValidatedConfig validate(const TnnConfig& in) {
  TnnConfig cfg = in;
  const int e = cfg.encoding_neurons;

  require(e >= 3, "encoding_neurons must be >= 3 (receptive-field width divides by E-2), got " +
                      std::to_string(e));
  require(cfg.t_max >= 1, "t_max must be positive");
  require(cfg.w_max >= 1, "w_max must be positive");
  require(((cfg.w_max + 1) & cfg.w_max) == 0,
          "w_max must equal 2^b - 1 for an integer weight width b, got " + std::to_string(cfg.w_max));
  require(cfg.gamma > Rational(0, 1), "gamma must be positive");
  require(cfg.num_clusters >= 1, "num_clusters must be positive");
  require(cfg.signal_length >= 1, "signal_length must be positive");
  require(cfg.max_epochs >= 0, "max_epochs must be non-negative");
  require(Rational(0, 1) < cfg.convergence_frac && cfg.convergence_frac < Rational(1, 1),
          "convergence_frac must lie in (0, 1)");

  const bool default_length = !cfg.reduced_length.has_value();
  if (default_length) cfg.reduced_length = cfg.signal_length / 8;
  const int ell = *cfg.reduced_length;
  require(ell >= 1, "reduced_length must be >= 1 (signal_length " +
                        std::to_string(cfg.signal_length) + " gives floor(L/8) = 0)");
  require(ell <= cfg.signal_length, "reduced_length must not exceed signal_length");
  if (default_length) {
    require(static_cast<long long>(e) * ell <= cfg.signal_length,
            "encoding_neurons * reduced_length must not exceed signal_length");
  }

  const long long max_potential = static_cast<long long>(e) * ell * cfg.w_max;
  if (!cfg.theta) cfg.theta = static_cast<int>(std::lround(static_cast<double>(max_potential) / 4.0));
  require(*cfg.theta >= 1, "theta must be positive");
  require(*cfg.theta <= max_potential,
          "theta must not exceed E*l*w_max = " + std::to_string(max_potential) +
              " (no neuron could fire)");

  const StdpParams& p = cfg.stdp;
  require(in_unit_interval(p.pi_s) && in_unit_interval(p.pi_c) && in_unit_interval(p.pi_b) &&
              in_unit_interval(p.pi_min),
          "STDP probabilities must lie in [0, 1]");
  require(p.pi_s < p.pi_c && p.pi_c < p.pi_b, "STDP probabilities must satisfy pi_s < pi_c < pi_b");

  return ValidatedConfig(std::move(cfg));
}

void apply_setting(TnnConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "encoding_neurons") cfg.encoding_neurons = parse_integer<int>(key, value);
  else if (key == "t_max") cfg.t_max = parse_integer<int>(key, value);
  else if (key == "w_max") cfg.w_max = parse_integer<int>(key, value);
  else if (key == "gamma") cfg.gamma = parse_rational(key, value);
  else if (key == "theta") cfg.theta = parse_integer<int>(key, value);
  else if (key == "num_clusters") cfg.num_clusters = parse_integer<int>(key, value);
  else if (key == "signal_length") cfg.signal_length = parse_integer<int>(key, value);
  else if (key == "reduced_length") cfg.reduced_length = parse_integer<int>(key, value);
  else if (key == "pi_s") cfg.stdp.pi_s = parse_rational(key, value);
  else if (key == "pi_c") cfg.stdp.pi_c = parse_rational(key, value);
  else if (key == "pi_b") cfg.stdp.pi_b = parse_rational(key, value);
  else if (key == "pi_min") cfg.stdp.pi_min = parse_rational(key, value);
  else if (key == "rng_seed") cfg.rng_seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "max_epochs") cfg.max_epochs = parse_integer<int>(key, value);
  else if (key == "convergence_frac") cfg.convergence_frac = parse_rational(key, value);
  else if (key == "shuffle") cfg.shuffle = parse_bool(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

TnnConfig parse_config(std::string_view text, TnnConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

TnnConfig load_config_file(const std::filesystem::path& path, TnnConfig base) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string to_config_text(const TnnConfig& cfg) {
  std::ostringstream out;
  out << "encoding_neurons=" << cfg.encoding_neurons << '\n'
      << "t_max=" << cfg.t_max << '\n'
      << "w_max=" << cfg.w_max << '\n'
      << "gamma=" << cfg.gamma.to_string() << '\n';
  if (cfg.theta) out << "theta=" << *cfg.theta << '\n';
  out << "num_clusters=" << cfg.num_clusters << '\n'
      << "signal_length=" << cfg.signal_length << '\n';
  if (cfg.reduced_length) out << "reduced_length=" << *cfg.reduced_length << '\n';
  out << "pi_s=" << cfg.stdp.pi_s.to_string() << '\n'
      << "pi_c=" << cfg.stdp.pi_c.to_string() << '\n'
      << "pi_b=" << cfg.stdp.pi_b.to_string() << '\n'
      << "pi_min=" << cfg.stdp.pi_min.to_string() << '\n'
      << "rng_seed=" << cfg.rng_seed << '\n'
      << "max_epochs=" << cfg.max_epochs << '\n'
      << "convergence_frac=" << cfg.convergence_frac.to_string() << '\n'
      << "shuffle=" << (cfg.shuffle ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace tnn
