#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "pda/error.hpp"

namespace pda {

// Exact binomial coefficient; 0 when r < 0 or r > n. Throws on uint64 overflow.
inline std::uint64_t binomial(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    // result * (n - r + i) / i is always integral at each step
    const auto num = static_cast<std::uint64_t>(n - r + i);
    const auto den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(result, den);
    const std::uint64_t a = result / g;
    const std::uint64_t b = num / (den / g);
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
      throw PreconditionError("binomial coefficient overflows 64 bits");
    result = a * b;
  }
  return result;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  // nonnegative a, positive b
  return (a + b - 1) / b;
}

// Bijection between the size-r subsets of {0..k-1}, taken in lexicographic
// order of their sorted element lists, and {0..C(k,r)-1}.
class SubsetRank {
 public:
  SubsetRank(std::int64_t k, std::int64_t r) : k_(k), r_(r), count_(binomial(k, r)) {
    if (k < 0 || r < 0 || r > k)
      throw PreconditionError("subset size must lie in [0, k]");
  }

  std::int64_t ground_size() const { return k_; }
  std::int64_t subset_size() const { return r_; }
  std::uint64_t count() const { return count_; }

  // Elements must be strictly increasing and inside [0,k).
  //
  // Counting the subsets that come after {c_0 < ... < c_{r-1}}: those are
  // the ones whose first differing position i holds a larger element, which
  // gives C(k-1-c_i, r-i) at each position.
  std::uint64_t rank(std::span<const std::int64_t> subset) const {
    if (static_cast<std::int64_t>(subset.size()) != r_)
      throw PreconditionError("subset has the wrong size");
    std::uint64_t after = 0;
    std::int64_t prev = -1;
    for (std::int64_t i = 0; i < r_; ++i) {
      const std::int64_t c = subset[static_cast<std::size_t>(i)];
      if (c <= prev || c >= k_)
        throw PreconditionError("subset must be strictly increasing inside [0,k)");
      after += binomial(k_ - 1 - c, r_ - i);
      prev = c;
    }
    return count_ - 1 - after;
  }

  std::vector<std::int64_t> unrank(std::uint64_t index) const {
    if (index >= count_) throw PreconditionError("subset index out of range");
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(r_));
    std::int64_t next = 0;
    for (std::int64_t i = 0; i < r_; ++i) {
      // skip candidates whose whole block of completions lies before index
      for (;; ++next) {
        const std::uint64_t block = binomial(k_ - 1 - next, r_ - 1 - i);
        if (index < block) break;
        index -= block;
      }
      out.push_back(next++);
    }
    return out;
  }

 private:
  std::int64_t k_;
  std::int64_t r_;
  std::uint64_t count_;
};

// Advances a strictly increasing subset of [0,k) to its lexicographic
// successor. Returns false after the last subset.
inline bool next_subset(std::vector<std::int64_t>& subset, std::int64_t k) {
  const auto r = static_cast<std::int64_t>(subset.size());
  for (std::int64_t i = r - 1; i >= 0; --i) {
    auto& c = subset[static_cast<std::size_t>(i)];
    if (c < k - r + i) {
      ++c;
      for (std::int64_t j = i + 1; j < r; ++j)
        subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace pda
