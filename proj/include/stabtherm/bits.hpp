#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace stabtherm {

/**
 * Fixed-length bit vector packed into 64-bit words.
 *
 * Used for the X/Z halves of Pauli strings, adjacency rows, and site
 * masks.  Bit i corresponds to site i+1 in the 1-based external
 * labelling.  Comparison is lexicographic on the word array, which gives
 * a deterministic total order on equal-length vectors.
 */
class BitVec {
 public:
  BitVec() : n_(0) {}
  explicit BitVec(uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

  uint32_t size() const { return n_; }

  bool get(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(uint32_t i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(uint32_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  void xor_in(const BitVec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  }

  bool none() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }

  uint32_t popcount() const {
    uint32_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  /// Parity of popcount(*this AND o); the workhorse of the symplectic form.
  bool and_parity(const BitVec& o) const {
    uint64_t acc = 0;
    for (size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1;
  }

  uint32_t and_popcount(const BitVec& o) const {
    uint32_t c = 0;
    for (size_t k = 0; k < w_.size(); ++k) c += std::popcount(w_[k] & o.w_[k]);
    return c;
  }

  /// True if every set bit of *this is also set in mask.
  bool subset_of(const BitVec& mask) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~mask.w_[k]) return false;
    return true;
  }

  BitVec operator|(const BitVec& o) const {
    BitVec r(*this);
    for (size_t k = 0; k < r.w_.size(); ++k) r.w_[k] |= o.w_[k];
    return r;
  }

  BitVec operator&(const BitVec& o) const {
    BitVec r(*this);
    for (size_t k = 0; k < r.w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) = default;
  friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    for (size_t k = a.w_.size(); k-- > 0;)
      if (auto c = a.w_[k] <=> b.w_[k]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  uint32_t n_;
  std::vector<uint64_t> w_;
};

}  // namespace stabtherm
