#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace stabtherm {

/**
 * k-element subsets of {0,...,n-1} in colexicographic order.
 *
 * Colex compares subsets by their largest differing element, so the scan
 * visits {0,1,2}, {0,1,3}, {0,2,3}, {1,2,3}, {0,1,4}, ...  The order is
 * total and position-indexable via the combinatorial number system,
 * which lets parallel scans carve the index space into chunks and still
 * report the globally first (minimum-colex) witness.
 */
class ColexSubsets {
 public:
  ColexSubsets(uint32_t n, uint32_t k) : n_(n), s_(k), done_(k > n) {
    for (uint32_t i = 0; i < k; ++i) s_[i] = i;
  }

  /// Start the scan at colex position idx.
  ColexSubsets(uint32_t n, uint32_t k, uint64_t idx)
      : n_(n), s_(unrank(n, k, idx)), done_(idx >= count(n, k)) {}

  /// C(n, k) as uint64; saturates at UINT64_MAX on overflow.
  static uint64_t count(uint32_t n, uint32_t k) {
    if (k > n) return 0;
    uint64_t c = 1;
    for (uint32_t i = 1; i <= k; ++i) {
      uint64_t num = n - k + i;
      if (c > std::numeric_limits<uint64_t>::max() / num)
        return std::numeric_limits<uint64_t>::max();
      c = c * num / i;
    }
    return c;
  }

  /// Subset at colex position idx (0-based): greedy decomposition of idx
  /// as sum of binomials C(s[k-1], k) + ... + C(s[0], 1).
  static std::vector<uint32_t> unrank(uint32_t n, uint32_t k, uint64_t idx) {
    std::vector<uint32_t> s(k);
    for (uint32_t j = k; j-- > 0;) {
      uint32_t v = j;  // smallest admissible element for slot j is j
      for (uint32_t cand = n; cand-- > j;) {
        if (count(cand, j + 1) <= idx) {
          v = cand;
          break;
        }
      }
      idx -= count(v, j + 1);
      s[j] = v;
      n = v;
    }
    return s;
  }

  const std::vector<uint32_t>& current() const { return s_; }
  bool done() const { return done_; }

  void advance() {
    uint32_t k = uint32_t(s_.size());
    if (k == 0) {
      done_ = true;
      return;
    }
    for (uint32_t i = 0; i < k; ++i) {
      uint32_t limit = (i + 1 < k) ? s_[i + 1] : n_;
      if (s_[i] + 1 < limit) {
        ++s_[i];
        for (uint32_t j = 0; j < i; ++j) s_[j] = j;
        return;
      }
    }
    done_ = true;
  }

 private:
  uint32_t n_;
  std::vector<uint32_t> s_;
  bool done_;
};

}  // namespace stabtherm
