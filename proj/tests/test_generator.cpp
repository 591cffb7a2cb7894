#include "wavetile/generator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wavetile;

namespace {

Dyadic dy(std::int64_t mant, std::int64_t exp) { return Dyadic(BigInt(mant), exp); }

GeneratorSpec spiral_spec(int m = 24, std::int64_t l = 16) {
  return GeneratorSpec{PairingSpec::spiral(), m, l};
}

// Midpoint quadrature of the two-sided band integral, as an independent
// check on the closed-form kernel.
double band_kernel_quadrature(std::int64_t m, double x, int nodes) {
  double t1 = std::ldexp(1.0, static_cast<int>(-m));
  double t0 = 0.5 * t1;
  double h = (t1 - t0) / nodes;
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    double s = t0 + (i + 0.5) * h;
    sum += 2.0 * std::cos(2.0 * M_PI * x * s) * h;
  }
  return sum;
}

}  // namespace

TEST_CASE("band_of selects the dyadic shell") {
  CHECK(band_of(dy(3, -3)) == 1);
  CHECK(band_of(dy(-1, -4)) == 4);
  CHECK(!band_of(dy(3, -2)).has_value());
  CHECK(!band_of(Dyadic(0)).has_value());
  CHECK(band_of(dy(1, -1)) == 1);    // right band edge
  CHECK(band_of(dy(1, -2)) == 2);    // band edges belong to the deeper band
  CHECK(!band_of(Dyadic(1)).has_value());

  auto sup = band_support(3);
  CHECK(sup.lo == dy(1, -4));
  CHECK(sup.hi == dy(1, -3));
}

TEST_CASE("psi_hat evaluates the single selected term") {
  GeneratorSpec spec = spiral_spec();
  CHECK(psi_hat(spec, dy(3, -3), dy(1, -1)).to_complex() == Complex(1.0, 0.0));
  CHECK(psi_hat(spec, dy(3, -3), dy(3, -1)).to_complex() == Complex(0.0, 0.0));
  CHECK(psi_hat(spec, dy(3, -4), dy(3, -1)).to_complex() == Complex(1.0, 0.0));
  // Band 4 maps to cell (0, 1): phase e^(2*pi*i*y).
  PhaseValue v = psi_hat(spec, dy(1, -4), dy(1, -1));
  CHECK(!v.zero);
  CHECK(v.to_complex() == Complex(-1.0, 0.0));
  CHECK(v.modulus() == 1.0);
  CHECK(psi_hat(spec, Dyadic(0), dy(1, -1)).modulus() == 0.0);
}

TEST_CASE("psi_hat modulus is exactly zero or one on random input") {
  GeneratorSpec spec = spiral_spec();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5000; ++i) {
    std::int64_t mant = static_cast<std::int64_t>(rng() % (1 << 29)) + 1;
    Dyadic s = dy(rng() % 2 ? mant : -mant, -30);
    Dyadic y = dy(static_cast<std::int64_t>(rng() % 4096) - 2048, -10);
    double mod = psi_hat(spec, s, y).modulus();
    CHECK((mod == 0.0 || mod == 1.0));
  }
}

TEST_CASE("band_kernel closed form") {
  CHECK(band_kernel(1, 0.0) == 0.5);
  CHECK(band_kernel(4, 0.0) == 0.0625);
  CHECK(std::abs(band_kernel(3, 0.7) - band_kernel_quadrature(3, 0.7, 20000)) <
        1e-9);
  CHECK(std::abs(band_kernel(1, -2.3) - band_kernel_quadrature(1, -2.3, 20000)) <
        1e-9);
  // Matches the direct difference-of-sines form away from zero.
  for (double x : {0.3, 1.7, -4.1, 12.0}) {
    for (std::int64_t m : {1, 2, 5, 9}) {
      double t1 = std::ldexp(1.0, static_cast<int>(-m));
      double direct =
          (std::sin(2 * M_PI * t1 * x) - std::sin(M_PI * t1 * x)) / (M_PI * x);
      CHECK(band_kernel(m, x) == doctest::Approx(direct).epsilon(1e-13));
    }
  }
  // Uniform bound 2^-m.
  for (double x = -8.0; x <= 8.0; x += 0.37) {
    CHECK(std::abs(band_kernel(2, x)) <= 0.25 + 1e-15);
  }
}

TEST_CASE("psi_space partial sums match hand-computed values") {
  SpaceValue v0 = psi_space(spiral_spec(24, 0), 0.0, dy(1, -1));
  CHECK(v0.value == Complex(0.5, 0.0));
  CHECK(v0.tail_bound > 0.0);

  // Modes l = -1, 0, 1 at y = 1/2: phases -1, 1, -1; cells (0,1) and (0,-1)
  // carry band indices 4 and 8.
  SpaceValue v1 = psi_space(spiral_spec(24, 1), 0.0, dy(1, -1));
  CHECK(v1.value.real() == doctest::Approx(0.5 - 1.0 / 16 - 1.0 / 256).epsilon(1e-15));
  CHECK(v1.value.imag() == 0.0);
  CHECK(v1.tail_bound < v0.tail_bound);
}

TEST_CASE("psi_space truncation error sits under the reported tail") {
  Dyadic y = dy(3, -2);
  for (double x1 : {0.0, 0.4, -1.3}) {
    SpaceValue coarse = psi_space(spiral_spec(24, 2), x1, y);
    SpaceValue fine = psi_space(spiral_spec(24, 12), x1, y);
    CHECK(std::abs(fine.value - coarse.value) <= coarse.tail_bound + 1e-15);
  }
}

TEST_CASE("mode_tail_sum bounds the dropped dyadic mass") {
  GeneratorSpec spec = spiral_spec();
  // Exact tail for k0 = 0, cutoff 0: indices 4, 8, 15, 23, 34, 46, ...
  double tail = mode_tail_sum(spec, 0, 0);
  double expect = std::ldexp(1.0, -4) + std::ldexp(1.0, -8) +
                  std::ldexp(1.0, -15) + std::ldexp(1.0, -23) +
                  std::ldexp(1.0, -34) + std::ldexp(1.0, -46);
  CHECK(tail >= expect);
  CHECK(tail <= expect * (1 + 1e-9) + 1e-12);
  CHECK(mode_tail_sum(spec, 0, 3) < mode_tail_sum(spec, 0, 1));
}

TEST_CASE("truncated norm is exact") {
  CHECK(psi_hat_norm_sq(spiral_spec(1)) == dy(1, -1));
  CHECK(psi_hat_norm_sq(spiral_spec(10)) == dy(1023, -10));
  CHECK(psi_hat_norm_sq(spiral_spec(24)) == Dyadic(1) - Dyadic::pow2(-24));
}

TEST_CASE("shannon indicator uses the asymmetric half-open support") {
  CHECK(shannon_hat(dy(3, -2)) == 1);
  CHECK(shannon_hat(dy(1, -1)) == 0);
  CHECK(shannon_hat(Dyadic(-1)) == 1);
  CHECK(shannon_hat(Dyadic(1)) == 1);
  CHECK(shannon_hat(dy(-1, -1)) == 0);
  CHECK(shannon_hat(dy(-3, -2)) == 1);
  CHECK(shannon_hat(Dyadic(0)) == 0);
  CHECK(shannon_hat(dy(5, -2)) == 0);
  CHECK(shannon_hat(Dyadic(-2)) == 0);
}

TEST_CASE("shannon_fourier dilates and modulates") {
  CHECK(shannon_fourier(0, 0, dy(3, -2)) == Complex(1.0, 0.0));
  CHECK(shannon_fourier(0, 0, dy(1, -1)) == Complex(0.0, 0.0));
  // k = 1 support: 2*xi in the base support, xi = 3/8 -> 2^(1/2)*e^(2*pi*i*m*3/4).
  Complex v = shannon_fourier(1, 1, dy(3, -3));
  CHECK(std::abs(v) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  Complex expect = std::sqrt(2.0) * unit_phase(dy(3, -2));
  CHECK(std::abs(v - expect) < 1e-15);
  CHECK(shannon_fourier(-2, 5, Dyadic(4)) == 0.5 * Complex(1.0, 0.0));
}

TEST_CASE("table scheme with missing modes throws on space sums") {
  // Table covering only the first ring: mode cutoff 2 needs cells outside.
  std::vector<std::optional<Cell>> rows;
  PairingSpec spiral = PairingSpec::spiral();
  for (std::int64_t m = 1; m <= 9; ++m) rows.push_back(unpair(spiral, m));
  GeneratorSpec spec{PairingSpec::from_table(rows), 24, 2};
  CHECK_THROWS_AS(psi_space(spec, 0.0, dy(1, -1)), TableMissError);

  // With the cutoff inside the table the sum matches the spiral.
  spec.mode_cutoff = 1;
  SpaceValue table_v = psi_space(spec, 0.3, dy(1, -1));
  SpaceValue spiral_v = psi_space(spiral_spec(24, 1), 0.3, dy(1, -1));
  CHECK(table_v.value == spiral_v.value);
  // Table tail bound is the loose prefix-complement bound.
  CHECK(table_v.tail_bound >= spiral_v.tail_bound);
}
