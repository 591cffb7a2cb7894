#include "wavetile/generator.hpp"

#include <cmath>

namespace wavetile {
namespace {

// Indices above this contribute less than 2^-4096 and are folded into a
// blanket remainder instead of exact accumulation.
constexpr std::int64_t kTailIndexCap = 4096;

}  // namespace

std::optional<std::int64_t> band_of(const Dyadic& s) {
  if (s.is_zero()) return std::nullopt;
  std::int64_t m = -exponent_locate(s.abs());
  if (m < 1) return std::nullopt;
  return m;
}

DyadicInterval band_support(std::int64_t m) {
  return DyadicInterval{Dyadic::pow2(-m - 1), Dyadic::pow2(-m)};
}

PhaseValue psi_hat(const GeneratorSpec& spec, const Dyadic& s, const Dyadic& y) {
  auto m = band_of(s);
  if (!m) return PhaseValue{};
  Cell cell = unpair(spec.pairing, *m);
  if (unit_cell(y) != cell.k) return PhaseValue{};
  return PhaseValue{false, y * Dyadic(cell.l)};
}

double band_kernel(std::int64_t m, double x) {
  // Integral of e^(2*pi*i*x*s) over (2^-(m+1), 2^-m] plus its mirror:
  // 2*(t1*sinc(2*pi*t1*x) - t0*sinc(2*pi*t0*x)) with t1 = 2^-m, t0 = t1/2,
  // which is (sin(2*pi*t1*x) - sin(2*pi*t0*x)) / (pi*x) away from x = 0.
  if (m > 1074) return 0.0;  // below double underflow
  double t1 = std::ldexp(1.0, static_cast<int>(-m));
  double t0 = 0.5 * t1;
  return 2.0 * (t1 * sinc_unnormalized(2.0 * M_PI * t1 * x) -
                t0 * sinc_unnormalized(2.0 * M_PI * t0 * x));
}

SpaceValue psi_space(const GeneratorSpec& spec, double x1, const Dyadic& y) {
  std::int64_t k0 = unit_cell(y);
  Complex value(0.0, 0.0);
  for (std::int64_t l = -spec.mode_cutoff; l <= spec.mode_cutoff; ++l) {
    std::int64_t d = pair(spec.pairing, k0, l);
    value += unit_phase(y * Dyadic(l)) * band_kernel(d, x1);
  }
  return SpaceValue{value, mode_tail_sum(spec, k0, spec.mode_cutoff)};
}

double mode_tail_sum(const GeneratorSpec& spec, std::int64_t k0,
                     std::int64_t mode_cutoff) {
  Dyadic total;
  bool capped = false;
  if (spec.pairing.scheme == PairScheme::kTable) {
    // The table assigns a prefix {1..N}; cells beyond it carry distinct
    // indices > N under any extension, so their mass is at most 2^-N.
    for (const auto& [cell, indices] : spec.pairing.index_of) {
      if (cell.k != k0 || std::llabs(cell.l) <= mode_cutoff) continue;
      for (std::int64_t d : indices) {
        if (d <= kTailIndexCap) total += Dyadic::pow2(-d);
        else capped = true;
      }
    }
    std::int64_t n = static_cast<std::int64_t>(spec.pairing.table.size());
    if (n <= kTailIndexCap) total += Dyadic::pow2(-n);
    else capped = true;
  } else {
    // Ring growth: |l| > max(|k0|, cutoff) puts (k0, l) on ring |l|, whose
    // indices exceed (2|l|-1)^2; the remainder past the exact window is a
    // super-geometric series bounded by twice its first term.
    std::int64_t lcap = std::max<std::int64_t>(std::llabs(k0), mode_cutoff) + 16;
    for (std::int64_t l = mode_cutoff + 1; l <= lcap; ++l) {
      for (std::int64_t sl : {l, -l}) {
        std::int64_t d = pair(spec.pairing, k0, sl);
        if (d <= kTailIndexCap) total += Dyadic::pow2(-d);
        else capped = true;
      }
    }
    std::int64_t edge = 2 * (lcap + 1) - 1;
    if (edge * edge <= kTailIndexCap) total += Dyadic::pow2(-(edge * edge) + 1);
    else capped = true;
  }
  if (capped) total += Dyadic::pow2(-kTailIndexCap + 8);
  double bound = total.to_double();
  // to_double rounds to nearest; nudge up so the result stays an upper bound.
  return std::nextafter(std::nextafter(bound, 1.0), 1.0);
}

Dyadic psi_hat_norm_sq(const GeneratorSpec& spec) {
  return Dyadic(1) - Dyadic::pow2(-spec.band_cutoff);
}

int shannon_hat(const Dyadic& xi) {
  static const Dyadic kHalf = Dyadic::pow2(-1);
  if (xi.sign() > 0) return kHalf < xi && !(Dyadic(1) < xi) ? 1 : 0;
  return !(xi < Dyadic(-1)) && xi < -kHalf ? 1 : 0;
}

Complex shannon_fourier(std::int64_t k, std::int64_t m, const Dyadic& xi) {
  Dyadic scaled = xi.mul_pow2(k);
  if (!shannon_hat(scaled)) return Complex(0.0, 0.0);
  return pow2_half(k) * unit_phase(scaled * Dyadic(m));
}

}  // namespace wavetile
