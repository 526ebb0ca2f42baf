#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tnnclust/config.hpp"
#include "tnnclust/data_io.hpp"
#include "tnnclust/encoding.hpp"
#include "tnnclust/errors.hpp"
#include "tnnclust/eval.hpp"
#include "tnnclust/hw_model.hpp"
#include "tnnclust/pipeline.hpp"

namespace tnn::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string file_checksum(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file for checksum: " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> settings;  // key=value overrides
  std::optional<std::uint64_t> seed;
  bool znorm = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key=value hyperparameter file");
  cmd->add_option("--set", opts.settings, "override one hyperparameter, e.g. --set theta=90")
      ->type_name("KEY=VALUE");
  cmd->add_option("--seed", opts.seed, "seed for every random choice (default 0)");
  cmd->add_flag("--znorm", opts.znorm, "z-normalize each series before use");
}

void require_file(const fs::path& path, const char* what) {
  if (!fs::exists(path)) throw InputError(std::string(what) + " not found: " + path.string());
}

TnnConfig build_config(const CommonOptions& opts, std::size_t length, int classes) {
  TnnConfig cfg;
  if (!opts.config_path.empty()) {
    require_file(opts.config_path, "config file");
    cfg = load_config_file(opts.config_path, cfg);
  }
  for (const auto& s : opts.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + s + "'");
    apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (opts.seed) cfg.rng_seed = *opts.seed;
  if (cfg.signal_length == 0) cfg.signal_length = static_cast<int>(length);
  if (cfg.num_clusters == 0) cfg.num_clusters = classes;
  return cfg;
}

Dataset load_dataset(const fs::path& path, bool znorm) {
  require_file(path, "dataset file");
  Dataset ds = load_ucr(path);
  return znorm ? znormalize(std::move(ds)) : ds;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << content;
    if (!out) throw InputError("write failed: " + path.string());
  }
  fs::rename(tmp, path);
}

std::string model_text(const TrainedModel& model) {
  std::ostringstream s;
  save_model(s, model);
  return s.str();
}

TrainedModel read_model(const fs::path& path) {
  require_file(path, "model file");
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file: " + path.string());
  return load_model(in);
}

json results_record(const std::string& name, double tnn_ri, double kmeans_ri, int epochs,
                    std::uint64_t seed) {
  return json{{"name", name},
              {"tnn_ri", tnn_ri},
              {"kmeans_ri", kmeans_ri},
              {"normalized_ri", normalized_ri(tnn_ri, kmeans_ri)},
              {"epochs", epochs},
              {"seed", seed}};
}

json epoch_record(const EpochStats& e) {
  return json{{"epoch", e.epoch},
              {"weights_changed_frac", e.weights_changed_frac},
              {"weights_touched_frac", e.weights_touched_frac},
              {"spike_rate", e.spike_rate},
              {"win_counts", e.win_counts}};
}

class Manifest {
 public:
  Manifest(std::string command, const std::vector<std::string>& args)
      : start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["args"] = args;
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
  }

  void config(const TnnConfig& cfg) {
    doc_["config"] = to_config_text(cfg);
    doc_["seed"] = cfg.rng_seed;
  }
  void input(const fs::path& p) { doc_["inputs"].push_back({{"path", p.string()}, {"checksum", file_checksum(p)}}); }
  void output(const fs::path& p) { doc_["outputs"].push_back({{"path", p.string()}, {"checksum", file_checksum(p)}}); }

  void write(const fs::path& path) {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    doc_["wall_clock_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    write_file(path, doc_.dump(2) + "\n");
  }

 private:
  std::chrono::steady_clock::time_point start_;
  json doc_;
};

std::string format_table(const std::vector<json>& rows) {
  std::ostringstream s;
  s << std::left << std::setw(24) << "dataset" << std::right << std::setw(10) << "tnn_ri"
    << std::setw(11) << "kmeans_ri" << std::setw(15) << "normalized_ri" << std::setw(8) << "epochs"
    << '\n';
  double sum = 0.0;
  for (const auto& r : rows) {
    s << std::left << std::setw(24) << r["name"].get<std::string>() << std::right << std::fixed
      << std::setprecision(4) << std::setw(10) << r["tnn_ri"].get<double>() << std::setw(11)
      << r["kmeans_ri"].get<double>() << std::setw(15) << r["normalized_ri"].get<double>()
      << std::setw(8) << r["epochs"].get<int>() << '\n';
    sum += r["normalized_ri"].get<double>();
  }
  if (rows.size() > 1) {
    s << std::left << std::setw(24) << "mean" << std::right << std::setw(36) << std::fixed
      << std::setprecision(4) << sum / static_cast<double>(rows.size()) << '\n';
  }
  return s.str();
}

struct TrainJob {
  std::string name;
  fs::path train;
  std::optional<fs::path> test;
  fs::path out_dir;
};

json run_train_job(const TrainJob& job, const CommonOptions& opts, int restarts,
                   const std::vector<std::string>& args) {
  Manifest manifest("train", args);
  Dataset train_file = load_dataset(job.train, opts.znorm);
  manifest.input(job.train);
  Dataset test_file;
  if (job.test) {
    test_file = load_dataset(*job.test, opts.znorm);
    manifest.input(*job.test);
  }
  auto [train_ds, eval_ds] = job.test ? split(train_file, SplitMode::kTrainTestFiles, &test_file)
                                      : split(train_file, SplitMode::kWhole);
  train_ds.name = eval_ds.name = job.name;

  const TnnConfig raw = build_config(opts, train_ds.length(), train_ds.num_classes());
  const ValidatedConfig cfg = validate(raw);
  manifest.config(cfg.raw());
  if (!opts.config_path.empty()) manifest.input(opts.config_path);

  std::string metrics;
  const TrainResult result = train(train_ds, cfg, [&metrics](const EpochStats& e) {
    metrics += epoch_record(e).dump() + "\n";
  });

  const Predictions pred = predict(result.model, eval_ds);
  std::string assignments;
  for (std::size_t i = 0; i < pred.clusters.size(); ++i) {
    assignments += std::to_string(pred.clusters[i]) + " " + std::to_string(pred.confidence_times[i]) + "\n";
  }
  const double tnn_ri = rand_index(eval_ds.labels, pred.clusters).value();
  const KMeansResult km = kmeans_baseline(eval_ds.samples, cfg.num_clusters(), cfg.rng_seed(),
                                          KMeansOptions{.restarts = restarts});
  const double km_ri = rand_index(eval_ds.labels, km.assignment).value();
  const json record = results_record(job.name, tnn_ri, km_ri, result.model.epochs_run, cfg.rng_seed());

  const fs::path model_path = job.out_dir / "model.tnn";
  const fs::path metrics_path = job.out_dir / "metrics.jsonl";
  const fs::path results_path = job.out_dir / "results.json";
  const fs::path assign_path = job.out_dir / "assignments.txt";
  write_file(model_path, model_text(result.model));
  write_file(metrics_path, metrics);
  write_file(results_path, record.dump(2) + "\n");
  write_file(assign_path, assignments);
  for (const auto& p : {model_path, metrics_path, results_path, assign_path}) manifest.output(p);
  manifest.write(job.out_dir / "manifest.json");
  return record;
}

std::optional<fs::path> find_split_file(const fs::path& dir, const std::string& name, const char* split) {
  for (const char* ext : {".tsv", ".txt", ".csv"}) {
    const fs::path p = dir / (name + "_" + split + ext);
    if (fs::exists(p)) return p;
  }
  return std::nullopt;
}

std::vector<TrainJob> discover_jobs(const fs::path& root, const fs::path& out_root) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<TrainJob> jobs;
  for (const auto& d : dirs) {
    const std::string name = d.filename().string();
    if (auto train_path = find_split_file(d, name, "TRAIN")) {
      jobs.push_back({name, *train_path, find_split_file(d, name, "TEST"), out_root / name});
    }
  }
  if (jobs.empty()) throw InputError("no <name>/<name>_TRAIN.tsv datasets under " + root.string());
  return jobs;
}

int cmd_train(const std::string& train_path, const std::string& test_path, const std::string& out_dir,
              const CommonOptions& opts, int restarts, int jobs, const std::vector<std::string>& args,
              std::ostream& out) {
  require_file(train_path, "training data");
  if (!fs::is_directory(train_path)) {
    TrainJob job{fs::path(train_path).stem().string(), train_path, std::nullopt, out_dir};
    if (auto pos = job.name.rfind("_TRAIN"); pos != std::string::npos && pos + 6 == job.name.size()) {
      job.name.resize(pos);
    }
    if (!test_path.empty()) {
      require_file(test_path, "test data");
      job.test = fs::path(test_path);
    }
    const json record = run_train_job(job, opts, restarts, args);
    out << format_table({record});
    return kOk;
  }

  if (!test_path.empty()) throw InputError("--test cannot be combined with a dataset directory");
  const auto todo = discover_jobs(train_path, out_dir);
  std::vector<json> records(todo.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < todo.size(); start += width) {
    std::vector<std::future<json>> wave;
    for (std::size_t i = start; i < std::min(todo.size(), start + width); ++i) {
      wave.push_back(std::async(std::launch::async, run_train_job, std::cref(todo[i]), std::cref(opts),
                                restarts, std::cref(args)));
    }
    for (std::size_t i = 0; i < wave.size(); ++i) records[start + i] = wave[i].get();
  }
  std::string lines;
  for (const auto& r : records) lines += r.dump() + "\n";
  write_file(fs::path(out_dir) / "results.jsonl", lines);
  out << format_table(records);
  return kOk;
}

int cmd_eval(const std::string& model_path, const std::string& data_path, const std::string& out_path,
             const CommonOptions& opts, int restarts, const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest("eval", args);
  const TrainedModel model = read_model(model_path);
  const Dataset ds = load_dataset(data_path, opts.znorm);
  manifest.input(model_path);
  manifest.input(data_path);
  manifest.config(model.config.raw());
  const std::uint64_t seed = opts.seed.value_or(model.config.rng_seed());
  const Predictions pred = predict(model, ds);
  const double tnn_ri = rand_index(ds.labels, pred.clusters).value();
  const KMeansResult km = kmeans_baseline(ds.samples, model.config.num_clusters(), seed,
                                          KMeansOptions{.restarts = restarts});
  const json record =
      results_record(ds.name, tnn_ri, rand_index(ds.labels, km.assignment).value(), model.epochs_run, seed);
  if (!out_path.empty()) {
    write_file(out_path, record.dump(2) + "\n");
    manifest.output(out_path);
    manifest.write(out_path + ".manifest.json");
  }
  out << format_table({record});
  return kOk;
}

std::optional<std::vector<double>> parse_signal(std::string_view line, std::size_t length, std::string& why) {
  char delim = line.find('\t') != std::string_view::npos ? '\t'
               : line.find(',') != std::string_view::npos ? ','
                                                          : ' ';
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t next = line.find(delim, pos);
    if (next == std::string_view::npos) next = line.size();
    std::string cell(line.substr(pos, next - pos));
    pos = next + 1;
    std::erase(cell, '\r');
    if (cell.find_first_not_of(' ') == std::string::npos) {
      if (delim == ' ') continue;
      why = "empty field";
      return std::nullopt;
    }
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || std::string_view(end).find_first_not_of(' ') != std::string_view::npos) {
      why = "not a number: '" + cell + "'";
      return std::nullopt;
    }
    if (!std::isfinite(v)) {
      why = "non-finite value";
      return std::nullopt;
    }
    values.push_back(v);
  }
  // A leading label column (UCR rows) is dropped.
  if (values.size() == length + 1) values.erase(values.begin());
  if (values.size() != length) {
    why = "expected " + std::to_string(length) + " values, got " + std::to_string(values.size());
    return std::nullopt;
  }
  return values;
}

int cmd_stream(const std::string& model_path, const std::string& input_path, bool learn,
               const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Manifest manifest("stream", args);
  TrainedModel model = read_model(model_path);
  manifest.input(model_path);
  manifest.config(model.config.raw());

  std::ifstream file;
  std::istream* source = &in;
  if (!input_path.empty() && input_path != "-") {
    require_file(input_path, "signal file");
    file.open(input_path);
    if (!file) throw InputError("cannot open signal file: " + input_path);
    source = &file;
  }

  const std::size_t length = model.projection.input_length();
  std::string line, why;
  std::size_t line_no = 0;
  while (std::getline(*source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto signal = parse_signal(line, length, why);
    if (!signal) {
      err << "line " << line_no << ": " << why << '\n';
      continue;
    }
    const ClusterAssignment a = stream_step(model, *signal, learn);
    out << a.cluster << ' ' << a.confidence_time << '\n';
  }
  if (learn) {
    write_file(model_path, model_text(model));
    manifest.output(model_path);
    manifest.write(model_path + ".manifest.json");
  }
  return kOk;
}

int cmd_encode(const std::string& data_path, const std::string& out_path, const CommonOptions& opts,
               const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest("encode", args);
  const Dataset ds = load_dataset(data_path, opts.znorm);
  manifest.input(data_path);
  const ValidatedConfig cfg = validate(build_config(opts, ds.length(), ds.num_classes()));
  manifest.config(cfg.raw());
  const ProjectionMatrix projection =
      make_projection(ds.length(), static_cast<std::size_t>(cfg.reduced_length()), cfg.rng_seed());
  const Matrix projected = project_all(ds.samples, projection);
  const ReceptiveFieldBank bank = fit_receptive_fields(projected, cfg.encoding_neurons(), cfg.gamma());
  std::vector<SpikeVector> spikes;
  for (std::size_t r = 0; r < projected.rows(); ++r) spikes.push_back(encode(projected.row(r), bank, cfg.t_max()));

  std::ostringstream dump;
  write_spike_dump(dump, spikes);
  if (out_path.empty()) {
    out << dump.str();
  } else {
    write_file(out_path, dump.str());
    manifest.output(out_path);
    manifest.write(out_path + ".manifest.json");
  }
  return kOk;
}

int cmd_hwcost(std::optional<std::uint64_t> synapses, const std::string& calibration_path,
               std::optional<int> length, std::optional<int> clusters, const CommonOptions& opts, bool json_only,
               std::ostream& out) {
  std::vector<HwCalibrationPoint> calibration = reference_calibration();
  if (!calibration_path.empty()) {
    require_file(calibration_path, "calibration file");
    calibration = load_calibration(calibration_path);
  }
  const HwCoefficients coeffs = fit_coefficients(calibration);

  std::optional<ValidatedConfig> cfg;
  if (!synapses) {
    const TnnConfig raw = build_config(opts, static_cast<std::size_t>(std::max(0, length.value_or(0))),
                                       clusters.value_or(0));
    if (raw.signal_length == 0 || raw.num_clusters == 0) {
      throw InputError("hwcost: give --synapses N, or --length and --clusters (or a config setting both)");
    }
    cfg = validate(raw);
    synapses = synapse_count(*cfg);
  } else if (*synapses == 0) {
    throw InputError("hwcost: --synapses must be positive");
  }

  const HwEstimate e = estimate(*synapses, coeffs);
  json record{{"synapse_count", e.synapse_count},
              {"area_mm2", e.area_mm2},
              {"latency_ns", e.latency_ns},
              {"power_mw", e.power_mw},
              {"node", e.node}};
  if (cfg) {
    record["synapse_reduction"] =
        synapse_reduction(cfg->encoding_neurons(), cfg->reduced_length(), cfg->signal_length());
    record["full_length_synapses"] = static_cast<std::uint64_t>(cfg->num_clusters()) * cfg->signal_length();
  }
  record["coefficients"] = {{"area_per_synapse", coeffs.area_per_synapse},
                            {"area_offset", coeffs.area_offset},
                            {"power_per_synapse", coeffs.power_per_synapse},
                            {"power_offset", coeffs.power_offset},
                            {"latency_base", coeffs.latency_base},
                            {"latency_log2_coeff", coeffs.latency_log_coeff}};
  if (!json_only) {
    out << std::left << std::setw(10) << "Node" << std::right << std::setw(14) << "Synapse Count"
        << std::setw(14) << "Area [mm2]" << std::setw(18) << "Comp. Time [ns]" << std::setw(12)
        << "Power [mW]" << '\n'
        << std::left << std::setw(10) << e.node << std::right << std::setw(14) << e.synapse_count
        << std::fixed << std::setprecision(4) << std::setw(14) << e.area_mm2 << std::setprecision(2)
        << std::setw(18) << e.latency_ns << std::setprecision(4) << std::setw(12) << e.power_mw << '\n';
  }
  out << record.dump() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal-neural-network clustering of univariate time series", "tnnclust"};
  app.require_subcommand(1);

  CommonOptions train_opts, eval_opts, encode_opts, hw_opts;
  std::string train_path, test_path, out_dir = "tnn_out", eval_out;
  int restarts = 10, jobs = 1;
  auto* train_cmd = app.add_subcommand("train", "train on a UCR file (or a directory of datasets) and evaluate");
  train_cmd->add_option("train", train_path, "training file, or directory of <name>/<name>_TRAIN.tsv")->required();
  train_cmd->add_option("--test", test_path, "held-out file to compute the Rand Index on");
  train_cmd->add_option("--out", out_dir, "output directory");
  train_cmd->add_option("--kmeans-restarts", restarts, "K-means baseline restarts")->check(CLI::PositiveNumber);
  train_cmd->add_option("--jobs", jobs, "datasets trained concurrently (directory mode)")->check(CLI::PositiveNumber);
  add_common(train_cmd, train_opts);

  std::string model_path, data_path;
  auto* eval_cmd = app.add_subcommand("eval", "Rand Index of a saved model against K-means");
  eval_cmd->add_option("model", model_path, "model file")->required();
  eval_cmd->add_option("dataset", data_path, "UCR file with ground-truth labels")->required();
  eval_cmd->add_option("--out", eval_out, "write the results JSON here");
  eval_cmd->add_option("--kmeans-restarts", restarts, "K-means baseline restarts")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval_opts.seed, "K-means seed (default: the model's)");
  eval_cmd->add_flag("--znorm", eval_opts.znorm, "z-normalize each series before use");

  std::string stream_model, stream_input;
  bool learn = false;
  auto* stream_cmd = app.add_subcommand("stream", "cluster signals line by line");
  stream_cmd->add_option("model", stream_model, "model file")->required();
  stream_cmd->add_option("--input", stream_input, "signal file, '-' for standard input (default)");
  stream_cmd->add_flag("--learn", learn, "keep learning and rewrite the model at end of input");

  std::string encode_path, encode_out;
  auto* encode_cmd = app.add_subcommand("encode", "dump encoder spike times, one sample per line");
  encode_cmd->add_option("dataset", encode_path, "UCR file")->required();
  encode_cmd->add_option("--out", encode_out, "write the dump here instead of standard output");
  add_common(encode_cmd, encode_opts);

  std::optional<std::uint64_t> synapses;
  std::optional<int> hw_length, hw_clusters;
  std::string calibration;
  bool json_only = false;
  auto* hw_cmd = app.add_subcommand("hwcost", "estimate 7 nm area, latency and power");
  hw_cmd->add_option("--synapses", synapses, "synapse count");
  hw_cmd->add_option("--length", hw_length, "signal length L");
  hw_cmd->add_option("--clusters", hw_clusters, "number of clusters C");
  hw_cmd->add_option("--calibration", calibration, "design points: synapses area_mm2 latency_ns power_mw");
  hw_cmd->add_flag("--json", json_only, "print only the JSON record");
  add_common(hw_cmd, hw_opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*train_cmd) return cmd_train(train_path, test_path, out_dir, train_opts, restarts, jobs, args, out);
    if (*eval_cmd) return cmd_eval(model_path, data_path, eval_out, eval_opts, restarts, args, out);
    if (*stream_cmd) return cmd_stream(stream_model, stream_input, learn, args, in, out, err);
    if (*encode_cmd) return cmd_encode(encode_path, encode_out, encode_opts, args, out);
    if (*hw_cmd) return cmd_hwcost(synapses, calibration, hw_length, hw_clusters, hw_opts, json_only, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace tnn::cli
