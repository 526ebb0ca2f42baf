#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tnnclust/errors.hpp"
#include "tnnclust/pipeline.hpp"

namespace tnn {

namespace {

constexpr const char* kMagic = "tnnclust-model";
constexpr int kVersion = 1;

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void expect_token(std::istream& in, const std::string& want) {
  std::string got;
  if (!(in >> got) || got != want) {
    throw InputError("model file: expected '" + want + "', found '" + got + "'");
  }
}

double read_double(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw InputError("model file: truncated receptive-field table");
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) throw InputError("model file: bad number '" + token + "'");
  return v;
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw InputError(std::string("model file: cannot read ") + what);
  return v;
}

}  // namespace

void save_model(std::ostream& out, const TrainedModel& model) {
  out << kMagic << ' ' << kVersion << '\n';

  const std::string cfg = to_config_text(model.config.raw());
  std::size_t lines = 0;
  for (char ch : cfg) lines += ch == '\n';
  out << "config " << lines << '\n' << cfg;

  out << "projection " << model.projection.input_length() << ' ' << model.projection.reduced_length()
      << ' ' << model.projection.seed() << '\n';

  const auto& bank = model.bank;
  out << "fields " << bank.size() << ' ' << bank.encoding_neurons() << ' ' << bank.gamma().to_string()
      << '\n';
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const FieldColumn& c = bank.column(i);
    out << exact(c.x_min) << ' ' << exact(c.x_max) << ' ' << exact(c.sigma);
    for (double m : c.mu) out << ' ' << exact(m);
    out << '\n';
  }

  out << "state " << model.epochs_run << ' ' << (model.converged ? 1 : 0) << ' ' << model.stdp_step
      << '\n';
  write_column(out, model.column);
}

TrainedModel load_model(std::istream& in) {
  expect_token(in, kMagic);
  if (read_value<int>(in, "version") != kVersion) throw InputError("model file: unsupported version");

  expect_token(in, "config");
  const auto lines = read_value<std::size_t>(in, "config line count");
  std::string line;
  std::getline(in, line);
  std::string text;
  for (std::size_t n = 0; n < lines; ++n) {
    if (!std::getline(in, line)) throw InputError("model file: truncated config block");
    text += line + '\n';
  }
  const ValidatedConfig cfg = validate(parse_config(text));

  expect_token(in, "projection");
  const auto length = read_value<std::size_t>(in, "projection length");
  const auto reduced = read_value<std::size_t>(in, "projection reduced length");
  const auto seed = read_value<std::uint64_t>(in, "projection seed");

  expect_token(in, "fields");
  const auto n_fields = read_value<std::size_t>(in, "field count");
  const auto e = read_value<int>(in, "encoding neurons");
  const Rational gamma = Rational::parse(read_value<std::string>(in, "gamma"));
  if (n_fields != reduced || e != cfg.encoding_neurons() || e < 3) {
    throw InputError("model file: receptive-field table does not match config");
  }
  std::vector<FieldColumn> columns(n_fields);
  for (auto& c : columns) {
    c.x_min = read_double(in);
    c.x_max = read_double(in);
    c.sigma = read_double(in);
    c.mu.resize(static_cast<std::size_t>(e));
    for (double& m : c.mu) m = read_double(in);
  }

  expect_token(in, "state");
  const int epochs = read_value<int>(in, "epochs");
  const int converged = read_value<int>(in, "converged flag");
  const auto step = read_value<std::uint64_t>(in, "stdp step");

  TrainedModel model{
      .projection = make_projection(length, reduced, seed),
      .bank = ReceptiveFieldBank(e, gamma, std::move(columns)),
      .column = read_column(in),
      .config = cfg,
      .epochs_run = epochs,
      .converged = converged != 0,
      .stdp_step = step,
  };
  if (model.column.synapses() != cfg.synapses_per_neuron() ||
      model.column.neurons() != cfg.num_clusters()) {
    throw InputError("model file: column shape does not match config");
  }
  return model;
}

}  // namespace tnn
