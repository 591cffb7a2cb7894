#include "wavetile/dyadic.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace wavetile {
namespace {

void check_exponent(std::int64_t e) {
  if (e > Dyadic::kMaxExponent || e < -Dyadic::kMaxExponent) {
    throw ExponentRangeError("dyadic exponent " + std::to_string(e) +
                             " outside +/-2^20");
  }
}

// Floor division by 2^s for s >= 0 (cpp_int >> is not floor for negatives).
BigInt floor_div_pow2(const BigInt& a, std::int64_t s) {
  if (s <= 0) return a << (-s);
  BigInt d = BigInt(1) << s;
  BigInt q = a / d;
  if (a < 0 && q * d != a) --q;
  return q;
}

}  // namespace

Dyadic::Dyadic(BigInt mant, std::int64_t exp) : mant_(std::move(mant)), exp_(exp) {
  if (mant_.is_zero()) {
    exp_ = 0;
    return;
  }
  std::int64_t shift =
      static_cast<std::int64_t>(boost::multiprecision::lsb(
          boost::multiprecision::abs(mant_)));
  if (shift > 0) {
    mant_ >>= shift;
    exp_ += shift;
  }
  check_exponent(exp_);
}

Dyadic Dyadic::operator-() const {
  Dyadic r;
  r.mant_ = -mant_;
  r.exp_ = exp_;
  return r;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  std::int64_t e = std::min(exp_, o.exp_);
  BigInt m = (mant_ << (exp_ - e)) + (o.mant_ << (o.exp_ - e));
  return Dyadic(std::move(m), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(mant_ * o.mant_, is_zero() || o.is_zero() ? 0 : exp_ + o.exp_);
}

Dyadic Dyadic::mul_pow2(std::int64_t j) const {
  if (is_zero()) return Dyadic();
  Dyadic r;
  r.mant_ = mant_;
  r.exp_ = exp_ + j;
  check_exponent(r.exp_);
  return r;
}

BigInt Dyadic::floor() const {
  if (exp_ >= 0) return mant_ << exp_;
  return floor_div_pow2(mant_, -exp_);
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
  int sl = sign();
  int sr = o.sign();
  if (sl != sr) return sl <=> sr;
  if (sl == 0) return std::strong_ordering::equal;
  std::int64_t e = std::min(exp_, o.exp_);
  BigInt l = mant_ << (exp_ - e);
  BigInt r = o.mant_ << (o.exp_ - e);
  if (l < r) return std::strong_ordering::less;
  if (r < l) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  // Split off the exponent so huge mantissas stay in range.
  std::int64_t bits =
      static_cast<std::int64_t>(boost::multiprecision::msb(
          boost::multiprecision::abs(mant_))) +
      1;
  std::int64_t drop = bits > 64 ? bits - 64 : 0;
  BigInt top = mant_ >> drop;  // toward zero; |error| < ulp after 64 bits
  double d = top.convert_to<double>();
  std::int64_t e = exp_ + drop;
  if (e > std::numeric_limits<int>::max())
    return d > 0 ? std::numeric_limits<double>::infinity()
                 : -std::numeric_limits<double>::infinity();
  if (e < std::numeric_limits<int>::min()) return d > 0 ? 0.0 : -0.0;
  return std::ldexp(d, static_cast<int>(e));
}

std::string Dyadic::decimal_string(int max_frac_digits) const {
  if (is_zero()) return "0";
  if (exp_ >= 0) return BigInt(mant_ << exp_).str();
  std::int64_t q = -exp_;
  if (q > max_frac_digits) {
    return mant_.str() + "*2^" + std::to_string(exp_);
  }
  // mant / 2^q == mant * 5^q / 10^q.
  BigInt five = 1;
  for (std::int64_t i = 0; i < q; ++i) five *= 5;
  BigInt scaled = boost::multiprecision::abs(mant_) * five;
  std::string digits = scaled.str();
  std::string out = sign() < 0 ? "-" : "";
  if (static_cast<std::int64_t>(digits.size()) <= q) {
    out += "0.";
    out.append(q - digits.size(), '0');
    out += digits;
  } else {
    out += digits.substr(0, digits.size() - q);
    out += '.';
    out += digits.substr(digits.size() - q);
  }
  return out;
}

std::int64_t exponent_locate(const Dyadic& x) {
  if (x.sign() <= 0) {
    throw NonPositiveError("exponent_locate requires x > 0");
  }
  // Canonical mant is odd. mant == 1: x == 2^exp exactly. Otherwise with b
  // bits, 2^(b-1) < mant < 2^b, so x lands strictly inside (2^(e-1), 2^e).
  if (x.mant() == 1) return x.exp();
  std::int64_t b =
      static_cast<std::int64_t>(boost::multiprecision::msb(x.mant())) + 1;
  return x.exp() + b;
}

BigInt cell_locate_big(const Dyadic& x, std::int64_t k) {
  // m = ceil(x / 2^k) - 1 = floor((mant - 1) / 2^(k - exp)) when k > exp.
  std::int64_t s = k - x.exp();
  if (s <= 0) return (x.mant() << (-s)) - 1;
  BigInt d = BigInt(1) << s;
  BigInt a = x.mant() - 1;
  BigInt q = a / d;
  if (a < 0 && q * d != a) --q;
  return q;
}

std::int64_t cell_locate(const Dyadic& x, std::int64_t k) {
  BigInt m = cell_locate_big(x, k);
  if (m > std::numeric_limits<std::int64_t>::max() ||
      m < std::numeric_limits<std::int64_t>::min()) {
    throw ExponentRangeError("cell index out of 64-bit range");
  }
  return m.convert_to<std::int64_t>();
}

std::int64_t unit_cell(const Dyadic& x) { return cell_locate(x, 0); }

DyadicInterval make_interval(Dyadic lo, Dyadic hi) {
  if (hi < lo) throw ParseError("interval with lo > hi");
  return DyadicInterval{std::move(lo), std::move(hi)};
}

std::optional<DyadicInterval> interval_intersect(const DyadicInterval& a,
                                                 const DyadicInterval& b) {
  const Dyadic& lo = a.lo < b.lo ? b.lo : a.lo;
  const Dyadic& hi = a.hi < b.hi ? a.hi : b.hi;
  if (!(lo < hi)) return std::nullopt;
  return DyadicInterval{lo, hi};
}

}  // namespace wavetile
