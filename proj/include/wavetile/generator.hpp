#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "wavetile/dyadic.hpp"
#include "wavetile/pairing.hpp"
#include "wavetile/phase.hpp"

namespace wavetile {

// Parameters of the paired-band generating function: which cell/band
// bijection to use, how many bands evaluations keep (band_cutoff, "M"),
// and how many lattice modes space-side sums keep (mode_cutoff, "L").
struct GeneratorSpec {
  PairingSpec pairing;
  int band_cutoff = 24;
  std::int64_t mode_cutoff = 16;
};

// Band index m >= 1 with |s| in (2^-(m+1), 2^-m], none for s == 0 or
// |s| > 1/2.
std::optional<std::int64_t> band_of(const Dyadic& s);

// Positive half of band m: (2^-(m+1), 2^-m].
DyadicInterval band_support(std::int64_t m);

// Either zero or a point on the unit circle with exactly known angle.
// modulus() is exact by construction; to_complex() evaluates the phase.
struct PhaseValue {
  bool zero = true;
  Dyadic turns;  // value = e^(2*pi*i*turns) when !zero

  double modulus() const { return zero ? 0.0 : 1.0; }
  Complex to_complex() const {
    return zero ? Complex(0.0, 0.0) : unit_phase(turns);
  }
  operator Complex() const { return to_complex(); }  // NOLINT
};

// Frequency-side evaluation at (s, y). Single term: the band of s selects
// one cell (k, l); the value is e^(2*pi*i*l*y) when y lands in (k, k+1]
// and zero otherwise (pointwise convention, exact at every point).
PhaseValue psi_hat(const GeneratorSpec& spec, const Dyadic& s, const Dyadic& y);

// Inverse transform of band m over both signs:
// (sin(2*pi*2^-m*x) - sin(2*pi*2^-(m-1)... see implementation; equals
// 2^-m at x = 0 and is bounded by 2^-m everywhere.
double band_kernel(std::int64_t m, double x);

struct SpaceValue {
  Complex value;
  double tail_bound;  // certified bound on the dropped |l| > L mass
};

// Space-side partial sum at (x1, y): sum over |l| <= L of
// e^(2*pi*i*l*y) * band_kernel(D(k0, l), x1) with k0 the unit cell of y.
SpaceValue psi_space(const GeneratorSpec& spec, double x1, const Dyadic& y);

// Upper bound on sum over |l| > mode_cutoff of 2^-D(k0, l).
double mode_tail_sum(const GeneratorSpec& spec, std::int64_t k0,
                     std::int64_t mode_cutoff);

// Squared L2 norm of the band-truncated generator: exactly 1 - 2^-M.
Dyadic psi_hat_norm_sq(const GeneratorSpec& spec);

// Indicator of [-1, -1/2) union (1/2, 1].
int shannon_hat(const Dyadic& xi);

// 2^(k/2) * shannon_hat(2^k*xi) * e^(2*pi*i*m*2^k*xi).
Complex shannon_fourier(std::int64_t k, std::int64_t m, const Dyadic& xi);

}  // namespace wavetile
