#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "filex/error.hpp"
#include "filex/process.hpp"
#include "filex/random.hpp"
#include "filex/stats.hpp"

namespace filex {

enum class Parameter { alpha, beta, s, n };

inline std::string_view parameter_name(Parameter p) {
  switch (p) {
    case Parameter::alpha: return "alpha";
    case Parameter::beta: return "beta";
    case Parameter::s: return "s";
    case Parameter::n: return "n";
  }
  return "?";
}

inline std::optional<Parameter> parse_parameter(std::string_view name) {
  if (name == "alpha") return Parameter::alpha;
  if (name == "beta") return Parameter::beta;
  if (name == "s") return Parameter::s;
  if (name == "n") return Parameter::n;
  return std::nullopt;
}

/// Axis label for the independent variable. Alpha sweeps are reported
/// against 1/alpha.
inline std::string_view parameter_label(Parameter p) {
  switch (p) {
    case Parameter::alpha: return "1/α";
    case Parameter::beta: return "β";
    case Parameter::s: return "S";
    case Parameter::n: return "N";
  }
  return "?";
}

/// Geometric interpolation from `low` to `high` (both inclusive) in `steps`
/// points, optionally floored for integer-valued parameters.
struct SweepSpec {
  double low = 1.0;
  double high = 1.0;
  std::size_t steps = 2;
  bool integral = false;

  void validate() const {
    if (!(low > 0.0) || !std::isfinite(low))
      throw InvalidParameter("sweep low must be positive");
    if (!(high > 0.0) || !std::isfinite(high))
      throw InvalidParameter("sweep high must be positive");
    if (steps < 2) throw InvalidParameter("sweep needs at least 2 steps");
    if (integral && std::floor(std::min(low, high)) < 1.0)
      throw InvalidParameter("integral sweep must stay >= 1");
  }
};

inline std::vector<double> log_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> values(spec.steps);
  const double ratio = spec.high / spec.low;
  const double last = static_cast<double>(spec.steps - 1);
  for (std::size_t i = 0; i < spec.steps; ++i) {
    values[i] = spec.low * std::pow(ratio, static_cast<double>(i) / last);
  }
  values.front() = spec.low;
  values.back() = spec.high;
  if (spec.integral) {
    for (double& v : values) v = std::floor(v);
  }
  return values;
}

struct ExperimentSpec {
  std::string name;
  Parameter varied = Parameter::alpha;
  SweepSpec sweep;
  ProcessParams fixed;  // the varied field is ignored
  bool alpha_coupled_to_s = false;  // alpha = coupled_alpha_per_weight * S
  double coupled_alpha_per_weight = 5e-3;
  bool correlate_inverse = false;  // correlate against 1/alpha
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;

  void validate() const {
    if (name.empty()) throw InvalidParameter("experiment needs a name");
    sweep.validate();
    if (varied != Parameter::alpha && !sweep.integral)
      throw InvalidParameter("sweep over " + std::string(parameter_name(varied)) +
                             " must be integral");
    if (alpha_coupled_to_s && varied != Parameter::s)
      throw InvalidParameter("alpha coupling only applies to s sweeps");
    if (alpha_coupled_to_s && !(coupled_alpha_per_weight > 0.0))
      throw InvalidParameter("coupled alpha per weight must be positive");
    if (correlate_inverse && varied != Parameter::alpha)
      throw InvalidParameter("inverse correlation only applies to alpha sweeps");
    if (replicates < 1) throw InvalidParameter("replicates must be >= 1");
  }

  ProcessParams params_at(double value) const {
    ProcessParams p = fixed;
    switch (varied) {
      case Parameter::alpha: p.alpha = value; break;
      case Parameter::beta: p.beta = static_cast<std::uint64_t>(value); break;
      case Parameter::s: p.s = static_cast<std::size_t>(value); break;
      case Parameter::n: p.n = static_cast<std::uint64_t>(value); break;
    }
    if (alpha_coupled_to_s) p.alpha = coupled_alpha_per_weight * static_cast<double>(p.s);
    return p;
  }
};

/// The four fixed-protocol experiments, one per hyperparameter.
inline std::vector<ExperimentSpec> canonical_experiments(std::uint64_t master_seed = 0) {
  std::vector<ExperimentSpec> out(4);

  out[0].name = "alpha";
  out[0].varied = Parameter::alpha;
  out[0].sweep = {1e-4, 1e-1, 200, false};
  out[0].fixed = {1e-3, 10, 64, 1000};
  out[0].correlate_inverse = true;

  out[1].name = "beta";
  out[1].varied = Parameter::beta;
  out[1].sweep = {8, 32768, 600, true};
  out[1].fixed = {1e-3, 10, 64, 10000};

  out[2].name = "s";
  out[2].varied = Parameter::s;
  out[2].sweep = {8, 256, 400, true};
  out[2].fixed = {0.32, 10, 64, 1000};
  out[2].alpha_coupled_to_s = true;

  out[3].name = "n";
  out[3].varied = Parameter::n;
  out[3].sweep = {100, 1e6, 400, true};
  out[3].fixed = {1.0, 5, 64, 1000};

  for (auto& e : out) e.master_seed = master_seed;
  return out;
}

inline std::optional<ExperimentSpec> canonical_experiment(std::string_view name,
                                                          std::uint64_t master_seed = 0) {
  for (auto& e : canonical_experiments(master_seed)) {
    if (e.name == name) return e;
  }
  return std::nullopt;
}

enum class Preset { full, reduced };

/// Sweep indices executed under a preset. Reduced keeps every 4th point so
/// its records are a subset of the full run's.
inline std::vector<std::size_t> sweep_indices(std::size_t steps, Preset preset) {
  const std::size_t stride = preset == Preset::reduced ? 4 : 1;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < steps; i += stride) idx.push_back(i);
  return idx;
}

struct RunRecord {
  std::string experiment;
  Parameter param = Parameter::alpha;
  double param_value = 0.0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  double entropy_bits = 0.0;

  bool operator==(const RunRecord&) const = default;
};

struct RunOptions {
  Mode mode = Mode::fast;
  Preset preset = Preset::full;
  unsigned workers = 1;
};

/// Runs `count` independent tasks on up to `workers` threads. Task i writes
/// only its own slot, so results never depend on the schedule. The
/// lowest-index failure is rethrown after all workers finish.
template <typename Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Executes every (sweep point, replicate) pair. Records come back ordered
/// by sweep index, then replicate.
inline std::vector<RunRecord> run_experiment(const ExperimentSpec& spec,
                                             const RunOptions& options = {}) {
  spec.validate();
  const auto values = log_sweep(spec.sweep);
  const auto indices = sweep_indices(values.size(), options.preset);
  const std::size_t reps = spec.replicates;

  std::vector<RunRecord> records(indices.size() * reps);
  parallel_for(records.size(), options.workers, [&](std::size_t slot) {
    const std::size_t point = indices[slot / reps];
    const std::size_t rep = slot % reps;
    const double value = values[point];

    RunRecord& rec = records[slot];
    rec.experiment = spec.name;
    rec.param = spec.varied;
    rec.param_value = value;
    rec.replicate = rep;
    rec.seed = derive_seed(spec.master_seed, point, rep);
    try {
      const ProcessParams params = spec.params_at(value);
      RandomStream rng(rec.seed);
      rec.entropy_bits = shannon_entropy_bits(run(params, rng, options.mode));
    } catch (const InvalidParameter& e) {
      throw InvalidParameter("experiment '" + spec.name + "' point " +
                             std::to_string(point) + " (" +
                             std::string(parameter_name(spec.varied)) + "=" +
                             std::to_string(value) + "): " + e.what());
    }
  });
  return records;
}

struct CorrelationRow {
  std::string experiment;
  Parameter param = Parameter::alpha;
  CorrelationResult result;
};

/// Records grouped by experiment, in order of first appearance.
inline std::vector<std::vector<RunRecord>> group_by_experiment(
    const std::vector<RunRecord>& records) {
  std::vector<std::vector<RunRecord>> groups;
  for (const auto& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.front().experiment == r.experiment;
    });
    if (it == groups.end()) {
      groups.push_back({r});
    } else {
      it->push_back(r);
    }
  }
  return groups;
}

/// Tau between the swept value and entropy for one experiment's records.
/// Alpha sweeps use 1/alpha as the independent variable.
inline CorrelationRow correlate_experiment(const std::vector<RunRecord>& records) {
  if (records.empty()) throw InvalidInput("no records to correlate");
  PairedSeries series;
  series.x.reserve(records.size());
  series.y.reserve(records.size());
  const Parameter param = records.front().param;
  for (const auto& r : records) {
    if (r.experiment != records.front().experiment || r.param != param)
      throw InvalidInput("records mix experiments");
    series.x.push_back(param == Parameter::alpha ? 1.0 / r.param_value : r.param_value);
    series.y.push_back(r.entropy_bits);
  }
  try {
    return {records.front().experiment, param, kendall_tau(series)};
  } catch (const UndefinedCorrelation& e) {
    throw UndefinedCorrelation("experiment '" + records.front().experiment +
                               "': " + e.what());
  }
}

inline std::vector<CorrelationRow> correlation_table(const std::vector<RunRecord>& records) {
  std::vector<CorrelationRow> rows;
  for (const auto& group : group_by_experiment(records)) {
    rows.push_back(correlate_experiment(group));
  }
  return rows;
}

}  // namespace filex
