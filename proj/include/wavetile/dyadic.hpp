#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "wavetile/errors.hpp"

namespace wavetile {

using BigInt = boost::multiprecision::cpp_int;

// Exact dyadic rational mant * 2^exp.
//
// Canonical form: mant is odd, or (mant, exp) == (0, 0). All constructors
// normalize. Exponents are kept within +/- kMaxExponent; arithmetic that
// would leave that range throws ExponentRangeError.
class Dyadic {
 public:
  static constexpr std::int64_t kMaxExponent = std::int64_t{1} << 20;

  Dyadic() = default;
  Dyadic(std::int64_t n) : Dyadic(BigInt(n), 0) {}  // NOLINT: implicit by design
  Dyadic(BigInt mant, std::int64_t exp);

  // 2^e.
  static Dyadic pow2(std::int64_t e) { return Dyadic(BigInt(1), e); }

  const BigInt& mant() const { return mant_; }
  std::int64_t exp() const { return exp_; }

  bool is_zero() const { return mant_.is_zero(); }
  // -1, 0, +1.
  int sign() const { return mant_.sign(); }
  bool is_integer() const { return exp_ >= 0 || is_zero(); }

  Dyadic operator-() const;
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  // value * 2^j, exact.
  Dyadic mul_pow2(std::int64_t j) const;

  Dyadic abs() const { return sign() < 0 ? -*this : *this; }

  // Largest integer <= value.
  BigInt floor() const;

  bool operator==(const Dyadic& o) const {
    return exp_ == o.exp_ && mant_ == o.mant_;
  }
  std::strong_ordering operator<=>(const Dyadic& o) const;

  // Nearest double; huge magnitudes saturate to +/-inf, tiny ones to 0.
  double to_double() const;

  // Decimal string of the mantissa alone (JSON form keeps exp separate).
  std::string mant_string() const { return mant_.str(); }

  // Exact decimal expansion, e.g. -3 * 2^-3 -> "-0.375". Falls back to
  // "mant*2^exp" when the fractional part would exceed max_frac_digits.
  std::string decimal_string(int max_frac_digits = 80) const;

 private:
  BigInt mant_ = 0;
  std::int64_t exp_ = 0;
};

// Unique e with 2^(e-1) < x <= 2^e. Throws NonPositiveError for x <= 0.
std::int64_t exponent_locate(const Dyadic& x);

// Unique m with x in (2^k * m, 2^k * (m+1)].
BigInt cell_locate_big(const Dyadic& x, std::int64_t k);
// Same, narrowed; throws ExponentRangeError if m does not fit 64 bits.
std::int64_t cell_locate(const Dyadic& x, std::int64_t k);
// cell_locate at unit scale: x in (n, n+1].
std::int64_t unit_cell(const Dyadic& x);

// Half-open interval (lo, hi]. Empty iff lo == hi; lo <= hi is enforced
// by interval constructors below.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  Dyadic length() const { return hi - lo; }
  bool empty() const { return !(lo < hi); }
  bool contains(const Dyadic& x) const { return lo < x && x <= hi; }
  bool operator==(const DyadicInterval& o) const = default;
};

// Throws ParseError if lo > hi.
DyadicInterval make_interval(Dyadic lo, Dyadic hi);

// Intersection of two half-open intervals; nullopt when empty.
std::optional<DyadicInterval> interval_intersect(const DyadicInterval& a,
                                                 const DyadicInterval& b);

}  // namespace wavetile
