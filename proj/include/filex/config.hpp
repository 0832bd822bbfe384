#pragma once

// Flat `key = value` configuration files.
//
//   # single run
//   alpha = 1
//   beta  = 5
//   s     = 64
//   n     = 1000
//   seed  = 42          (optional, default 0)
//   mode  = fast        (optional: fast | reference)
//
// Experiment files either name a canonical experiment (`canonical = beta`)
// or spell out the sweep: name, varied, low, high, steps, integral, the
// three fixed parameters, alpha_coupled_to_s, coupled_alpha_per_weight,
// correlate_inverse, replicates, master_seed.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "filex/error.hpp"
#include "filex/process.hpp"
#include "filex/sweep.hpp"

namespace filex {

struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

using ConfigMap = std::map<std::string, ConfigEntry, std::less<>>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline ConfigMap parse_config(std::istream& in) {
  ConfigMap map;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = detail::trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected key = value");
    const std::string key(detail::trim(text.substr(0, eq)));
    const std::string value(detail::trim(text.substr(eq + 1)));
    if (key.empty()) throw ParseError(line, "empty key");
    if (value.empty()) throw ConfigError(key, "empty value for key: " + key);
    if (!map.emplace(key, ConfigEntry{value, line}).second)
      throw ConfigError(key, "duplicate key: " + key);
  }
  return map;
}

inline ConfigMap parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline ConfigMap load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file: " + path);
  return parse_config(in);
}

namespace detail {

class ConfigReader {
 public:
  explicit ConfigReader(const ConfigMap& map) : map_(map) {}

  bool has(std::string_view key) const { return map_.find(key) != map_.end(); }

  const std::string& raw(std::string_view key) {
    auto it = map_.find(key);
    if (it == map_.end()) throw ConfigError(std::string(key), "missing key: " + std::string(key));
    used_.insert(std::string(key));
    return it->second.value;
  }

  double real(std::string_view key) {
    const auto& v = raw(key);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      throw bad_value(key, v, "a number");
    return out;
  }

  std::uint64_t integer(std::string_view key) {
    const auto& v = raw(key);
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      throw bad_value(key, v, "a non-negative integer");
    return out;
  }

  bool boolean(std::string_view key) {
    const auto& v = raw(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw bad_value(key, v, "true or false");
  }

  template <typename T, typename Getter>
  T optional(std::string_view key, T fallback, Getter get) {
    return has(key) ? get(key) : fallback;
  }

  /// Rejects any key that was never read.
  void finish() const {
    for (const auto& [key, entry] : map_) {
      if (!used_.count(key))
        throw ConfigError(key, "unknown key: " + key + " (line " +
                                   std::to_string(entry.line) + ")");
    }
  }

 private:
  static ConfigError bad_value(std::string_view key, const std::string& v,
                               std::string_view expected) {
    return ConfigError(std::string(key), "bad value for key " + std::string(key) +
                                             ": '" + v + "' is not " +
                                             std::string(expected));
  }

  const ConfigMap& map_;
  std::set<std::string, std::less<>> used_;
};

inline Mode parse_mode(std::string_view key, const std::string& v) {
  if (v == "fast") return Mode::fast;
  if (v == "reference") return Mode::reference;
  throw ConfigError(std::string(key), "bad value for key " + std::string(key) +
                                          ": expected fast or reference");
}

}  // namespace detail

struct RunConfig {
  ProcessParams params;
  std::uint64_t seed = 0;
  Mode mode = Mode::fast;
  bool print_distribution = false;
};

inline RunConfig run_config_from(const ConfigMap& map) {
  detail::ConfigReader r(map);
  RunConfig cfg;
  cfg.params.alpha = r.real("alpha");
  cfg.params.beta = r.integer("beta");
  cfg.params.s = r.integer("s");
  cfg.params.n = r.integer("n");
  if (r.has("seed")) cfg.seed = r.integer("seed");
  if (r.has("mode")) cfg.mode = detail::parse_mode("mode", r.raw("mode"));
  if (r.has("print_distribution")) cfg.print_distribution = r.boolean("print_distribution");
  r.finish();
  try {
    cfg.params.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError("", e.what());
  }
  return cfg;
}

inline ExperimentSpec experiment_from(const ConfigMap& map) {
  detail::ConfigReader r(map);
  ExperimentSpec spec;
  if (r.has("canonical")) {
    const auto& name = r.raw("canonical");
    auto found = canonical_experiment(name);
    if (!found)
      throw ConfigError("canonical", "unknown canonical experiment: " + name +
                                         " (expected alpha, beta, s or n)");
    spec = *found;
  } else {
    spec.name = r.raw("name");
    const auto& varied = r.raw("varied");
    auto param = parse_parameter(varied);
    if (!param) throw ConfigError("varied", "bad value for key varied: " + varied);
    spec.varied = *param;
    spec.sweep.low = r.real("low");
    spec.sweep.high = r.real("high");
    spec.sweep.steps = r.integer("steps");
    spec.sweep.integral = r.has("integral") ? r.boolean("integral")
                                            : spec.varied != Parameter::alpha;
    spec.alpha_coupled_to_s = r.has("alpha_coupled_to_s") && r.boolean("alpha_coupled_to_s");
    if (r.has("coupled_alpha_per_weight"))
      spec.coupled_alpha_per_weight = r.real("coupled_alpha_per_weight");
    spec.correlate_inverse = r.has("correlate_inverse")
                                 ? r.boolean("correlate_inverse")
                                 : spec.varied == Parameter::alpha;

    // The varied parameter (and alpha, when coupled) come from the sweep.
    // Listing them anyway leaves the key unread, so finish() rejects it.
    auto fixed = [&](Parameter p, auto get) {
      const auto key = parameter_name(p);
      const bool derived = p == spec.varied ||
                           (p == Parameter::alpha && spec.alpha_coupled_to_s);
      if (!derived) get(key);
    };
    fixed(Parameter::alpha, [&](std::string_view k) { spec.fixed.alpha = r.real(k); });
    fixed(Parameter::beta, [&](std::string_view k) { spec.fixed.beta = r.integer(k); });
    fixed(Parameter::s, [&](std::string_view k) { spec.fixed.s = r.integer(k); });
    fixed(Parameter::n, [&](std::string_view k) { spec.fixed.n = r.integer(k); });
  }
  if (r.has("replicates")) spec.replicates = r.integer("replicates");
  if (r.has("master_seed")) spec.master_seed = r.integer("master_seed");
  r.finish();
  try {
    spec.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError("", e.what());
  }
  return spec;
}

}  // namespace filex
