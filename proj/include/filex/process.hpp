#pragma once

// The finite-lexicon self-reinforcing process.
//
// S weights start at alpha / S. Each iteration freezes the current weights,
// draws beta category indices i.i.d. from the frozen categorical
// distribution, and adds 1 / beta to the weight of every drawn index, so each
// iteration adds exactly one unit of mass. After n iterations the weights are
// normalized and returned.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "filex/error.hpp"
#include "filex/fenwick.hpp"
#include "filex/random.hpp"

namespace filex {

struct ProcessParams {
  double alpha = 1.0;        // initial total mass
  std::uint64_t beta = 1;    // draws per iteration
  std::size_t s = 1;         // lexicon size
  std::uint64_t n = 0;       // iterations

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw InvalidParameter("alpha must be a positive finite number, got " +
                             std::to_string(alpha));
    if (beta < 1) throw InvalidParameter("beta must be >= 1");
    if (s < 1) throw InvalidParameter("s must be >= 1");
  }
};

struct WeightState {
  std::vector<double> weights;  // unnormalized, all > 0
  std::uint64_t iteration = 0;

  double total() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
  }
};

/// A normalized probability vector with strictly positive entries.
class Distribution {
 public:
  Distribution() = default;

  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw InvalidInput("distribution is empty");
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p > 0.0 && p <= 1.0))
        throw InvalidInput("probability outside (0, 1]: " + std::to_string(p));
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw InvalidInput("probabilities sum to " + std::to_string(sum));
  }

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<double> probs_;
};

enum class Mode { reference, fast };

inline WeightState init_weights(const ProcessParams& params) {
  params.validate();
  return WeightState{std::vector<double>(params.s, params.alpha / params.s), 0};
}

namespace detail {

inline void check_weights(std::span<const double> weights) {
  if (weights.empty()) throw InvalidInput("weights are empty");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw InvalidInput("weight " + std::to_string(i) +
                         " is not a positive finite number");
  }
}

inline void check_beta(std::uint64_t beta) {
  if (beta < 1) throw InvalidParameter("beta must be >= 1");
}

/// One reference iteration against a tree mirroring `weights`. All beta
/// draws search the tree before any increment lands, which is the frozen
/// copy. Drawn indices are appended to `trace` when given.
inline void reference_iteration(std::vector<double>& weights,
                                FenwickTree<double>& tree, std::uint64_t beta,
                                double increment, RandomStream& rng,
                                std::vector<std::size_t>& drawn,
                                std::vector<std::size_t>* trace) {
  drawn.clear();
  const double total = tree.total();
  for (std::uint64_t j = 0; j < beta; ++j) {
    drawn.push_back(tree.search(rng.uniform() * total));
  }
  for (std::size_t i : drawn) {
    weights[i] += increment;
    tree.add(i, increment);
  }
  if (trace) trace->insert(trace->end(), drawn.begin(), drawn.end());
}

/// One fast iteration: a single Multinomial(beta, w / sum(w)) count vector
/// generated as a chain of conditional binomials, then w[i] += count[i] *
/// increment.
inline void fast_iteration(std::vector<double>& weights, std::uint64_t beta,
                           double increment, RandomStream& rng,
                           std::vector<std::uint64_t>* counts_out) {
  const std::size_t s = weights.size();
  if (counts_out) counts_out->assign(s, 0);
  double remaining_mass = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::uint64_t remaining = beta;
  for (std::size_t i = 0; i < s && remaining > 0; ++i) {
    std::uint64_t k;
    if (i + 1 == s) {
      k = remaining;
    } else {
      const double w = weights[i];
      k = rng.binomial(remaining, w / remaining_mass);
      remaining_mass -= w;
    }
    if (k == 0) continue;
    remaining -= k;
    weights[i] += static_cast<double>(k) * increment;
    if (counts_out) (*counts_out)[i] = k;
  }
}

/// Runs the process with increments of `increment_scale / beta`. A scale
/// other than 1 only exists to check that running with (c * alpha, c / beta)
/// samples the same index sequence as (alpha, 1 / beta).
inline WeightState run_weights(const ProcessParams& params, RandomStream& rng,
                               Mode mode, double increment_scale = 1.0,
                               std::vector<std::size_t>* trace = nullptr) {
  WeightState state = init_weights(params);
  const double increment = increment_scale / static_cast<double>(params.beta);

  if (mode == Mode::reference) {
    FenwickTree<double> tree(state.weights);
    std::vector<std::size_t> drawn;
    drawn.reserve(params.beta);
    for (std::uint64_t it = 0; it < params.n; ++it) {
      reference_iteration(state.weights, tree, params.beta, increment, rng,
                          drawn, trace);
    }
  } else {
    for (std::uint64_t it = 0; it < params.n; ++it) {
      fast_iteration(state.weights, params.beta, increment, rng, nullptr);
    }
  }
  state.iteration = params.n;
  return state;
}

}  // namespace detail

/// Inverse-CDF draw by linear scan. Consumes exactly one uniform variate.
inline std::size_t sample_categorical(std::span<const double> weights,
                                      RandomStream& rng) {
  detail::check_weights(weights);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double target = rng.uniform() * total;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    if (target < weights[i]) return i;
    target -= weights[i];
  }
  return weights.size() - 1;
}

/// Inverse-CDF draw through a prefix-sum tree in O(log s). Same
/// distribution, and the same uniform consumption, as the linear scan.
inline std::size_t sample_categorical(const FenwickTree<double>& tree,
                                      RandomStream& rng) {
  if (tree.size() == 0) throw InvalidInput("weights are empty");
  return tree.search(rng.uniform() * tree.total());
}

/// One iteration drawing beta indices one at a time.
inline WeightState step(WeightState state, std::uint64_t beta,
                        RandomStream& rng) {
  detail::check_weights(state.weights);
  detail::check_beta(beta);
  FenwickTree<double> tree(state.weights);
  std::vector<std::size_t> drawn;
  drawn.reserve(beta);
  detail::reference_iteration(state.weights, tree, beta,
                              1.0 / static_cast<double>(beta), rng, drawn,
                              nullptr);
  ++state.iteration;
  return state;
}

/// One iteration drawing a whole multinomial count vector at once. Same
/// distribution as step(); O(s) instead of O(beta log s).
inline WeightState step_fast(WeightState state, std::uint64_t beta,
                             RandomStream& rng) {
  detail::check_weights(state.weights);
  detail::check_beta(beta);
  detail::fast_iteration(state.weights, beta, 1.0 / static_cast<double>(beta),
                         rng, nullptr);
  ++state.iteration;
  return state;
}

/// weights / sum(weights).
inline Distribution normalize(const WeightState& state) {
  const double total = state.total();
  std::vector<double> probs(state.weights.size());
  for (std::size_t i = 0; i < probs.size(); ++i)
    probs[i] = state.weights[i] / total;
  return Distribution(std::move(probs));
}

inline Distribution run(const ProcessParams& params, RandomStream& rng,
                        Mode mode = Mode::fast) {
  return normalize(detail::run_weights(params, rng, mode));
}

}  // namespace filex
