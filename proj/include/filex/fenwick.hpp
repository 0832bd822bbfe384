#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <vector>

namespace filex {

/// Binary indexed tree over non-negative reals with prefix-sum search.
template <typename T = double>
class FenwickTree {
 public:
  FenwickTree() = default;

  explicit FenwickTree(std::span<const T> values) { assign(values); }

  /// O(n) construction.
  void assign(std::span<const T> values) {
    tree_.assign(values.begin(), values.end());
    const std::size_t n = tree_.size();
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t parent = i + (i & (~i + 1));
      if (parent <= n) tree_[parent - 1] += tree_[i - 1];
    }
    total_ = prefix_sum(n);
  }

  std::size_t size() const noexcept { return tree_.size(); }

  T total() const noexcept { return total_; }

  void add(std::size_t index, T delta) {
    for (std::size_t i = index + 1; i <= tree_.size(); i += i & (~i + 1)) {
      tree_[i - 1] += delta;
    }
    total_ = prefix_sum(tree_.size());
  }

  /// Sum of the first `count` values.
  T prefix_sum(std::size_t count) const {
    T sum{};
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) sum += tree_[i - 1];
    return sum;
  }

  /// Smallest index whose inclusive prefix sum exceeds `target`.
  /// Returns size() - 1 when target >= total (rounding at the top end).
  std::size_t search(T target) const {
    const std::size_t n = tree_.size();
    std::size_t pos = 0;
    for (std::size_t step = std::bit_floor(n); step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next <= n && tree_[next - 1] <= target) {
        pos = next;
        target -= tree_[next - 1];
      }
    }
    return pos < n ? pos : n - 1;
  }

 private:
  std::vector<T> tree_;
  T total_{};
};

}  // namespace filex
