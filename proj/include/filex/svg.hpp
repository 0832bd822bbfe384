#pragma once

// Entropy-vs-hyperparameter scatter plots as standalone SVG 1.1.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "filex/error.hpp"
#include "filex/sweep.hpp"

namespace filex {

struct PlotSpec {
  std::vector<RunRecord> records;
  std::string x_label;
  bool log_x = true;
  double y_max = 6.0;  // log2(S)
  std::string title;
};

/// Plot spec with the conventional axis for the records' parameter:
/// alpha sweeps are drawn against 1/alpha, and the y axis tops out at
/// log2 of the lexicon size.
inline PlotSpec plot_spec_for(std::vector<RunRecord> records, std::size_t lexicon_size) {
  if (records.empty()) throw InvalidInput("no records to plot");
  if (lexicon_size < 2) throw InvalidInput("lexicon size must be >= 2 to plot");
  PlotSpec spec;
  spec.x_label = std::string(parameter_label(records.front().param));
  spec.title = "entropy vs " + spec.x_label + " (" + records.front().experiment + ")";
  spec.y_max = std::log2(static_cast<double>(lexicon_size));
  spec.records = std::move(records);
  return spec;
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace detail

inline std::string render_svg(const PlotSpec& spec) {
  if (spec.records.empty()) throw InvalidInput("no records to plot");
  if (!(spec.y_max > 0.0)) throw InvalidInput("y range must be positive");

  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 20, top = 40, bottom = 60;
  constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

  std::vector<double> xs;
  xs.reserve(spec.records.size());
  for (const auto& r : spec.records) {
    const double x = r.param == Parameter::alpha ? 1.0 / r.param_value : r.param_value;
    if (spec.log_x && !(x > 0.0)) throw InvalidInput("log axis needs positive x values");
    xs.push_back(spec.log_x ? std::log10(x) : x);
  }
  double lo = *std::min_element(xs.begin(), xs.end());
  double hi = *std::max_element(xs.begin(), xs.end());
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }

  auto px = [&](double x) { return left + (x - lo) / (hi - lo) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - y / spec.y_max) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    svg << "<text x=\"" << detail::coord(left + plot_w / 2) << "\" y=\"24\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << detail::xml_escape(spec.title) << "</text>\n";
  }

  // Horizontal gridlines at every whole bit plus the top of the range.
  svg << "<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n";
  std::vector<double> y_ticks;
  for (double y = 0; y < spec.y_max; y += 1.0) y_ticks.push_back(y);
  y_ticks.push_back(spec.y_max);
  for (double y : y_ticks) {
    svg << "<line x1=\"" << detail::coord(left) << "\" y1=\"" << detail::coord(py(y))
        << "\" x2=\"" << detail::coord(left + plot_w) << "\" y2=\""
        << detail::coord(py(y)) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
      << left + plot_w << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  for (double y : y_ticks) {
    svg << "<text x=\"" << left - 6 << "\" y=\"" << detail::coord(py(y) + 4)
        << "\" text-anchor=\"end\">" << detail::tick_label(y) << "</text>\n";
  }
  if (spec.log_x) {
    for (double d = std::ceil(lo); d <= std::floor(hi); d += 1.0) {
      svg << "<text x=\"" << detail::coord(px(d)) << "\" y=\"" << top + plot_h + 16
          << "\" text-anchor=\"middle\">1e" << detail::tick_label(d) << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double x = lo + (hi - lo) * i / 4.0;
      svg << "<text x=\"" << detail::coord(px(x)) << "\" y=\"" << top + plot_h + 16
          << "\" text-anchor=\"middle\">" << detail::tick_label(x) << "</text>\n";
    }
  }
  svg << "<text x=\"" << detail::coord(left + plot_w / 2) << "\" y=\"" << height - 16
      << "\" text-anchor=\"middle\" font-size=\"13\">"
      << detail::xml_escape(spec.x_label) << (spec.log_x ? " (log scale)" : "")
      << "</text>\n"
      << "<text x=\"18\" y=\"" << detail::coord(top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << detail::coord(top + plot_h / 2) << ")\">entropy (bits)</text>\n"
      << "</g>\n";

  svg << "<g class=\"markers\" fill=\"#ff7f0e\" fill-opacity=\"0.8\">\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    svg << "<circle cx=\"" << detail::coord(px(xs[i])) << "\" cy=\""
        << detail::coord(py(spec.records[i].entropy_bits)) << "\" r=\"2.5\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace filex
