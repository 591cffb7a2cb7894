#include "wavetile/phase.hpp"

#include <cmath>

namespace wavetile {
namespace {

const Dyadic kHalf = Dyadic::pow2(-1);
const Dyadic kQuarter = Dyadic::pow2(-2);

// Reduce u mod 2 into (-1, 1].
Dyadic reduce_mod2(const Dyadic& u) {
  Dyadic r = u - Dyadic(BigInt(u.mul_pow2(-1).floor()), 1);
  if (Dyadic(1) < r) r -= Dyadic(2);
  return r;
}

}  // namespace

double sin_pi(const Dyadic& u) {
  Dyadic v = reduce_mod2(u);  // (-1, 1]
  if (v.is_zero() || v == Dyadic(1)) return 0.0;
  if (v == kHalf) return 1.0;
  if (v == -kHalf) return -1.0;
  // Fold into [-1/2, 1/2] where sin(pi*.) is well conditioned.
  if (kHalf < v) v = Dyadic(1) - v;
  else if (v < -kHalf) v = -Dyadic(1) - v;
  return std::sin(M_PI * v.to_double());
}

double cos_pi(const Dyadic& u) { return sin_pi(u + kHalf); }

Complex unit_phase(const Dyadic& turns) {
  Dyadic t2 = turns.mul_pow2(1);
  return Complex(sin_pi(t2 + kHalf), sin_pi(t2));
}

double sinc_pi(const Dyadic& u) {
  if (u.is_zero()) return 1.0;
  return sin_pi(u) / (M_PI * u.to_double());
}

Complex band_integral(const Dyadic& x, const Dyadic& alpha, const Dyadic& beta) {
  Dyadic len = beta - alpha;
  if (len.sign() <= 0) return Complex(0.0, 0.0);
  Dyadic mid = (alpha + beta).mul_pow2(-1);
  Complex phase = unit_phase(x * mid);
  double s = sinc_pi(x * len);
  return len.to_double() * s * phase;
}

double sinc_unnormalized(double z) {
  if (std::abs(z) < 1e-6) {
    double z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
  }
  return std::sin(z) / z;
}

Complex fourier_integral(double x, double alpha, double beta) {
  double len = beta - alpha;
  if (!(len > 0.0)) return Complex(0.0, 0.0);
  double mid = 0.5 * (alpha + beta);
  Complex phase = std::polar(1.0, 2.0 * M_PI * x * mid);
  return len * sinc_unnormalized(M_PI * x * len) * phase;
}

double pow2_half(std::int64_t k) {
  // k = 2q + r with r in {0, 1}: 2^(k/2) = 2^q * sqrt(2)^r.
  std::int64_t q = k >= 0 ? k / 2 : (k - 1) / 2;
  int r = static_cast<int>(k - 2 * q);
  return std::ldexp(r ? M_SQRT2 : 1.0, static_cast<int>(q));
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace wavetile
