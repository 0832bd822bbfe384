#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "filex/error.hpp"
#include "filex/sweep.hpp"

namespace filex {

inline constexpr std::string_view kCsvHeader =
    "experiment,param_name,param_value,replicate,seed,entropy_bits";

/// 17 significant digits: parses back to the identical double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    if (r.experiment.find_first_of(",\"\n\r") != std::string::npos)
      throw InvalidInput("experiment name cannot contain commas, quotes or newlines: " + r.experiment);
    out << r.experiment << ',' << parameter_name(r.param) << ','
        << format_real(r.param_value) << ',' << r.replicate << ',' << r.seed
        << ',' << format_real(r.entropy_bits) << '\n';
  }
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, std::string_view column) {
  T out{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw ParseError(line, "bad " + std::string(column) + " value '" + std::string(field) + "'");
  return out;
}

}  // namespace detail

inline std::vector<RunRecord> read_csv(std::istream& in) {
  std::vector<RunRecord> records;
  std::string raw;
  std::size_t line = 0;
  if (!std::getline(in, raw)) throw ParseError(1, "empty file, expected header");
  ++line;
  if (!raw.empty() && raw.back() == '\r') raw.pop_back();
  if (raw != kCsvHeader) throw ParseError(line, "unexpected header '" + raw + "'");

  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    const auto f = detail::split_fields(raw);
    if (f.size() != 6)
      throw ParseError(line, "expected 6 fields, found " + std::to_string(f.size()));
    RunRecord r;
    if (f[0].empty()) throw ParseError(line, "empty experiment name");
    r.experiment = std::string(f[0]);
    auto param = parse_parameter(f[1]);
    if (!param) throw ParseError(line, "unknown param_name '" + std::string(f[1]) + "'");
    r.param = *param;
    r.param_value = detail::parse_field<double>(f[2], line, "param_value");
    r.replicate = detail::parse_field<std::size_t>(f[3], line, "replicate");
    r.seed = detail::parse_field<std::uint64_t>(f[4], line, "seed");
    r.entropy_bits = detail::parse_field<double>(f[5], line, "entropy_bits");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace filex
