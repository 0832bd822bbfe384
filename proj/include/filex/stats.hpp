#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "filex/error.hpp"
#include "filex/process.hpp"

namespace filex {

/// Shannon entropy in bits. Zero probabilities contribute nothing.
inline double shannon_entropy_bits(std::span<const double> probs) {
  if (probs.empty()) throw InvalidInput("distribution is empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidInput("probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("distribution is not normalized");

  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

inline double shannon_entropy_bits(const Distribution& dist) {
  return shannon_entropy_bits(dist.probs());
}

struct PairedSeries {
  std::vector<double> x;
  std::vector<double> y;

  void validate() const {
    if (x.size() != y.size()) throw InvalidInput("series lengths differ");
    if (x.size() < 2) throw InvalidInput("need at least two observations");
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::isnan(x[i]) || std::isnan(y[i]))
        throw InvalidInput("NaN in series at position " + std::to_string(i));
    }
  }
};

struct CorrelationResult {
  double tau = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

namespace detail {

struct TieSums {
  std::int64_t pairs = 0;  // sum t(t-1)/2
  double v_t = 0.0;        // sum t(t-1)(2t+5)
  double v_1 = 0.0;        // sum t(t-1)
  double v_2 = 0.0;        // sum t(t-1)(t-2)
};

/// Tie statistics of an already sorted sequence.
template <typename Eq>
TieSums tie_sums(std::size_t n, Eq&& equal_to_prev) {
  TieSums sums;
  std::size_t run = 1;
  auto flush = [&] {
    const double t = static_cast<double>(run);
    sums.pairs += static_cast<std::int64_t>(run) * (run - 1) / 2;
    sums.v_t += t * (t - 1) * (2 * t + 5);
    sums.v_1 += t * (t - 1);
    sums.v_2 += t * (t - 1) * (t - 2);
    run = 1;
  };
  for (std::size_t i = 1; i < n; ++i) {
    if (equal_to_prev(i)) {
      ++run;
    } else {
      flush();
    }
  }
  flush();
  return sums;
}

/// Stable merge sort of `values`, returning the number of strict inversions.
inline std::int64_t count_inversions(std::vector<double>& values) {
  std::vector<double> buffer(values.size());
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < values.size(); width *= 2) {
    for (std::size_t lo = 0; lo < values.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, values.size());
      const std::size_t hi = std::min(lo + 2 * width, values.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (values[j] < values[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buffer[k++] = values[j++];
        } else {
          buffer[k++] = values[i++];
        }
      }
      while (i < mid) buffer[k++] = values[i++];
      while (j < hi) buffer[k++] = values[j++];
    }
    values.swap(buffer);
  }
  return swaps;
}

}  // namespace detail

/// Kendall's tau-b with a two-sided p-value from the tie-corrected normal
/// approximation. O(n log n) via Knight's merge-sort algorithm.
inline CorrelationResult kendall_tau(const PairedSeries& series) {
  series.validate();
  const std::size_t n = series.x.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (series.x[a] != series.x[b]) return series.x[a] < series.x[b];
    return series.y[a] < series.y[b];
  });

  const auto x_ties = detail::tie_sums(n, [&](std::size_t i) {
    return series.x[order[i]] == series.x[order[i - 1]];
  });
  const auto joint_ties = detail::tie_sums(n, [&](std::size_t i) {
    return series.x[order[i]] == series.x[order[i - 1]] &&
           series.y[order[i]] == series.y[order[i - 1]];
  });

  std::vector<double> y_sorted(n);
  for (std::size_t i = 0; i < n; ++i) y_sorted[i] = series.y[order[i]];
  const std::int64_t discordant = detail::count_inversions(y_sorted);

  const auto y_ties = detail::tie_sums(
      n, [&](std::size_t i) { return y_sorted[i] == y_sorted[i - 1]; });

  const std::int64_t total_pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (x_ties.pairs == total_pairs || y_ties.pairs == total_pairs)
    throw UndefinedCorrelation("one of the series is constant");

  const std::int64_t score = total_pairs - x_ties.pairs - y_ties.pairs +
                             joint_ties.pairs - 2 * discordant;

  CorrelationResult result;
  result.n = n;
  result.tau = static_cast<double>(score) /
               std::sqrt(static_cast<double>(total_pairs - x_ties.pairs) *
                         static_cast<double>(total_pairs - y_ties.pairs));
  result.tau = std::clamp(result.tau, -1.0, 1.0);

  const double nd = static_cast<double>(n);
  double variance =
      (nd * (nd - 1) * (2 * nd + 5) - x_ties.v_t - y_ties.v_t) / 18.0 +
      x_ties.v_1 * y_ties.v_1 / (2 * nd * (nd - 1));
  if (n > 2)
    variance += x_ties.v_2 * y_ties.v_2 / (9 * nd * (nd - 1) * (nd - 2));
  const double z = static_cast<double>(score) / std::sqrt(variance);
  result.p_value = std::clamp(std::erfc(std::abs(z) / std::sqrt(2.0)), 0.0, 1.0);
  return result;
}

}  // namespace filex
