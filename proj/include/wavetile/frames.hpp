#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "wavetile/generator.hpp"
#include "wavetile/report.hpp"
#include "wavetile/testfn.hpp"
#include "wavetile/tile_index.hpp"

namespace wavetile {

// Normalization constants of the continuous systems. One dyadic band has
// logarithmic measure ln 2; the symmetric (two-sided) profile carries twice
// that, so the normalizers are the square roots of those masses.
struct FrameConstants {
  static double band_measure();          // ln 2
  static double symmetric_normalizer();  // sqrt(2 ln 2)
  static double paired_normalizer();     // sqrt(ln 2)
};

// Finite band expansion on one sign of the scale axis:
// F(s) = sum_m entries[m] * chi(|s| in (2^-m-1, 2^-m]), band indices m >= 1.
// Each band contributes |entries[m]|^2 * ln 2 to the ds/|s| energy.
struct BandedProfile {
  std::map<std::int64_t, Complex> entries;
};

// Band-diagonal inner product in units of the band measure:
// sum_m a[m] * conj(b[m]).
Complex banded_inner(const BandedProfile& a, const BandedProfile& b);

// <f, psi_{k,m}> for the discrete system member at scale 2^k, shift 2^k*m.
// Closed form: per mode of f the band at scale k clips the profile pieces
// and each clipped piece integrates a single exponential exactly.
Complex coeff_discrete(const GeneratorSpec& spec, const TensorSum2D& f,
                       std::int64_t k, std::int64_t m);

struct GramEntry {
  Complex value;
  double tail_bound;  // covers the bands beyond spec.band_cutoff
};

// <psi_a, psi_b> summed over the first band_cutoff bands. Entries with
// a.k != b.k vanish identically (every band term is zero), so their
// tail_bound is 0; same-scale entries carry tail_bound 2^(1-M).
GramEntry gram_entry(const GeneratorSpec& spec, TileIndex a, TileIndex b);

// Energy balance sum over (k, m) in the window against ||f||^2.
// k runs over [k_lo, k_hi]. m_limit empty sums all translations at once
// (per scale the translation sum collapses to the clipped profile energy,
// exactly); m_limit = T >= 0 sums |coeff_discrete|^2 over |m| <= T and adds
// the certified 1/T translation tail to the bound. The bound also carries
// the profile mass the scale window leaves uncovered, computed exactly.
VerificationReport parseval_check(const GeneratorSpec& spec,
                                  const TensorSum2D& f, std::int64_t k_lo,
                                  std::int64_t k_hi,
                                  std::optional<std::int64_t> m_limit);

// Banded profile of the mode expansion under the continuous transform on
// the given sign of the scale axis (sign is +1 or -1; the bands are even,
// so both signs carry the same entries): entries[D(cell)] = coefficient.
BandedProfile continuous_profile(const GeneratorSpec& spec,
                                 const ModeExpansion& f2, int sign);

// Isometry of the continuous transform on mode expansions. The band
// measure ln 2 cancels the squared normalizer exactly, so no logarithm is
// evaluated: lhs = banded_inner of the two profiles, rhs = <f2, g2>.
VerificationReport continuous_isometry_check(const GeneratorSpec& spec,
                                             const ModeExpansion& f2,
                                             const ModeExpansion& g2);

// (I+, I-): energy of the profile against ds/|s| on each half-axis,
// sum of |amp|^2 * ln(hi/lo) per piece. Throws SingularAtZeroError when a
// nonempty piece has 0 in its closure.
std::pair<double, double> admissibility_integrals(const StepProfile& profile);

// Pointwise frequency-domain isometry at a fixed dyadic xi != 0: for every
// mode present, exactly one scale k puts 2^k*|xi| inside that mode's band
// (checked exactly); lhs sums the per-scale coefficient products over the
// covering k range, rhs = <f2, g2>.
VerificationReport discrete_isometry_check(const GeneratorSpec& spec,
                                           const ModeExpansion& f2,
                                           const ModeExpansion& g2,
                                           const Dyadic& xi);

// Band-limited sampling identity at scale k: lhs = integral of
// fprofile * conj(gprofile) (exact piecewise overlap), rhs = 2^k * sum of
// space-side samples over |m| <= t_limit. certified_bound is the 1/|x|
// sample-decay tail from the profiles' total variations.
VerificationReport sampling_identity_check(const StepProfile& fprofile,
                                           const StepProfile& gprofile,
                                           std::int64_t k,
                                           std::int64_t t_limit);

// Midpoint-rule grid for the continuous reproducing integral: s log-uniform
// on [s_lo, s_hi], u uniform on [u_lo, u_hi]. refine_levels > 1 prepends
// dyadically coarsened passes so the report carries a convergence trace;
// a coarsened pass halves the u node count and the u window together, so
// the u step stays fixed and the window truncation shrinks on refinement.
struct CalderonGrid {
  double s_lo = 0x1p-20;
  double s_hi = 16.0;
  int s_nodes = 256;
  double u_lo = -500.0;
  double u_hi = 500.0;
  int u_nodes = 512;
  int refine_levels = 5;
};

// Quadrature of the continuous reproducing integral against ||f||^2.
// certified_bound is the requested tolerance (the midpoint rule does not
// certify its own error); pass means the finest-grid defect meets it.
VerificationReport calderon_quadrature(const GeneratorSpec& spec,
                                       const TensorSum2D& f,
                                       const CalderonGrid& grid,
                                       double tol = 1e-3);

}  // namespace wavetile
