#pragma once

// Subcommand bodies for the filex tool. Each returns the process exit code:
// 0 success, 1 runtime error, 2 usage or configuration error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "filex/config.hpp"
#include "filex/csv.hpp"
#include "filex/stats.hpp"
#include "filex/svg.hpp"
#include "filex/sweep.hpp"

namespace filex::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

struct CommonOptions {
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  Preset preset = Preset::full;
  unsigned workers = 1;
};

inline std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline int cmd_run(const std::string& config_path, const CommonOptions& opts,
                   bool print_distribution, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = run_config_from(load_config(config_path));
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  }
  if (opts.mode) cfg.mode = *opts.mode;
  if (opts.seed) cfg.seed = *opts.seed;

  RandomStream rng(cfg.seed);
  const Distribution dist = run(cfg.params, rng, cfg.mode);
  out << "entropy_bits: " << fixed6(shannon_entropy_bits(dist)) << '\n';
  if (print_distribution || cfg.print_distribution) {
    for (std::size_t i = 0; i < dist.size(); ++i)
      out << i << ' ' << format_real(dist[i]) << '\n';
  }
  return kOk;
}

inline int cmd_sweep(const std::string& config_path, const std::string& out_path,
                     const CommonOptions& opts, std::ostream& err) {
  ExperimentSpec spec;
  try {
    spec = experiment_from(load_config(config_path));
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  }
  if (opts.seed) spec.master_seed = *opts.seed;

  const RunOptions run_opts{opts.mode.value_or(Mode::fast), opts.preset, opts.workers};
  std::vector<RunRecord> records;
  try {
    records = run_experiment(spec, run_opts);
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kUsageError;
  }

  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "I/O error: cannot write " << out_path << '\n';
    return kRuntimeError;
  }
  write_csv(file, records);
  file.flush();
  if (!file) {
    err << "I/O error: write to " << out_path << " failed\n";
    return kRuntimeError;
  }
  return kOk;
}

inline std::vector<RunRecord> load_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw Error(path + ": parse error at " + e.what());
  }
}

/// Prints one row per experiment: independent variable, tau, p-value, n.
inline int cmd_table(const std::vector<std::string>& csv_paths, std::ostream& out,
                     std::ostream& err) {
  std::vector<RunRecord> all;
  try {
    for (const auto& path : csv_paths) {
      auto recs = load_records(path);
      all.insert(all.end(), recs.begin(), recs.end());
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kRuntimeError;
  }
  if (all.empty()) {
    err << "no records in input\n";
    return kRuntimeError;
  }

  int status = kOk;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %-10s %7s %12s %6s\n", "experiment",
                "ind. var.", "tau", "p-value", "n");
  out << line;
  for (const auto& group : group_by_experiment(all)) {
    const auto& first = group.front();
    // %-*s pads by bytes; labels like "1/α" carry one extra UTF-8 byte.
    const std::string label(parameter_label(first.param));
    const int label_pad = 10 + static_cast<int>(label.size()) -
                          static_cast<int>(std::count_if(label.begin(), label.end(), [](char c) {
                            return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
                          }));
    try {
      const auto row = correlate_experiment(group);
      std::snprintf(line, sizeof line, "%-12s %-*s %+7.2f %12.3g %6zu\n",
                    first.experiment.c_str(), label_pad, label.c_str(),
                    row.result.tau, row.result.p_value, row.result.n);
      out << line;
    } catch (const Error& e) {
      std::snprintf(line, sizeof line, "%-12s %-*s %7s %12s %6zu\n",
                    first.experiment.c_str(), label_pad, label.c_str(), "undef",
                    "-", group.size());
      out << line;
      err << "error: " << e.what() << '\n';
      status = kRuntimeError;
    }
  }
  return status;
}

inline int cmd_plot(const std::string& csv_path, const std::string& out_path,
                    bool linear_x, std::optional<std::size_t> lexicon_size,
                    std::ostream& err) {
  std::vector<RunRecord> records;
  try {
    records = load_records(csv_path);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kRuntimeError;
  }
  if (records.empty()) {
    err << "invalid input: no records to plot\n";
    return kRuntimeError;
  }

  std::size_t s = 64;
  if (lexicon_size) {
    s = *lexicon_size;
  } else if (records.front().param == Parameter::s) {
    double max_s = 0;
    for (const auto& r : records) max_s = std::max(max_s, r.param_value);
    s = static_cast<std::size_t>(max_s);
  }

  std::string svg;
  try {
    PlotSpec spec = plot_spec_for(std::move(records), s);
    spec.log_x = !linear_x;
    svg = render_svg(spec);
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kRuntimeError;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file || !(file << svg) || !file.flush()) {
    err << "I/O error: cannot write " << out_path << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace filex::cli
