#pragma once

#include <complex>
#include <span>

#include "wavetile/dyadic.hpp"

namespace wavetile {

using Complex = std::complex<double>;

// sin(pi * u) with the argument reduced mod 2 in exact dyadic arithmetic.
// Half-integer u gives exactly 0 or +/-1.
double sin_pi(const Dyadic& u);
double cos_pi(const Dyadic& u);

// e^(2*pi*i*turns). Quarter-turn multiples are exact (+/-1, +/-i).
Complex unit_phase(const Dyadic& turns);

// sin(pi*u) / (pi*u), 1 at u == 0.
double sinc_pi(const Dyadic& u);

// Integral of e^(2*pi*i*x*xi) over xi in (alpha, beta], evaluated in the
// midpoint form  L * e^(2*pi*i*x*c) * sinc(pi*x*L)  so the phase arguments
// stay exactly reduced dyadics (c = midpoint, L = beta - alpha).
Complex band_integral(const Dyadic& x, const Dyadic& alpha, const Dyadic& beta);

// Same integral for non-dyadic data (quadrature paths). The stable small
// argument branch lives inside sinc_unnormalized.
Complex fourier_integral(double x, double alpha, double beta);

// sin(z)/z with a series branch below |z| = 1e-6.
double sinc_unnormalized(double z);

// 2^(k/2) without pow(): exact power of two times sqrt(2) for odd k.
double pow2_half(std::int64_t k);

// Sum by recursive halving. Quadrature reductions use this so the result
// does not depend on how the node loop is scheduled.
double pairwise_sum(std::span<const double> xs);

}  // namespace wavetile
