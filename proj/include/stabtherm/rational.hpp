#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stabtherm {

struct RationalOverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/**
 * Exact rational scalar for Hamiltonian coefficients and certificates.
 *
 * Always normalized: positive denominator, coprime parts.  Arithmetic
 * runs through 128-bit intermediates, so products of any two in-range
 * values cannot overflow silently; results that do not fit back into
 * 64-bit parts throw RationalOverflowError instead of wrapping.
 */
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(int64_t n) : num_(n) {}  // NOLINT: implicit by design
  Rat(int64_t n, int64_t d) : Rat(make(n, d)) {}

  int64_t numerator() const { return num_; }
  int64_t denominator() const { return den_; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(w(a.num_) * b.den_ + w(b.num_) * a.den_, w(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(w(a.num_) * b.den_ - w(b.num_) * a.den_, w(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(w(a.num_) * b.num_, w(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    return make(w(a.num_) * b.den_, w(a.den_) * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat&, const Rat&) = default;
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const __int128 l = w(a.num_) * b.den_, r = w(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static __int128 w(int64_t v) { return static_cast<__int128>(v); }

  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned __int128 a = n < 0 ? static_cast<unsigned __int128>(-n)
                                : static_cast<unsigned __int128>(n);
    unsigned __int128 b = static_cast<unsigned __int128>(d);
    while (b) {
      a %= b;
      const auto t = a;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= static_cast<__int128>(a);
      d /= static_cast<__int128>(a);
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw RationalOverflowError("rational exceeds 64-bit parts");
    Rat r;
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
  }

  int64_t num_ = 0;
  int64_t den_ = 1;
};

/**
 * Gaussian rational: re + im*i with exact rational parts.
 *
 * Factorization phases are fourth roots of unity, so every scalar met in
 * the synthesis/decomposition pipeline stays in this field.
 */
struct CRat {
  Rat re{0}, im{0};

  CRat() = default;
  CRat(Rat r) : re(r) {}
  CRat(Rat r, Rat i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
  CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
  CRat operator-() const { return {-re, -im}; }
  CRat operator*(const CRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend bool operator==(const CRat& a, const CRat& b) = default;

  /// Multiply by i^e, e taken mod 4.
  CRat times_i_pow(int e) const {
    switch (((e % 4) + 4) % 4) {
      case 0: return *this;
      case 1: return {-im, re};
      case 2: return {-re, -im};
      default: return {im, -re};
    }
  }
};

/// i^e as a Gaussian rational, e taken mod 4.
inline CRat i_pow(int e) { return CRat(Rat(1)).times_i_pow(e); }

std::string to_string(const Rat& r);
std::string to_string(const CRat& c);

/**
 * Parse an exact coefficient: an integer ("-3"), a fraction ("3/4"), or
 * a finite decimal ("-0.25", parsed exactly as -25/100).  Throws
 * std::invalid_argument on malformed input.
 */
Rat parse_rational(const std::string& text);

inline double to_double(const Rat& r) {
  return double(r.numerator()) / double(r.denominator());
}

}  // namespace stabtherm
