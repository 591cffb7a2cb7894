#pragma once

#include <complex>
#include <map>
#include <vector>

#include "wavetile/dyadic.hpp"
#include "wavetile/pairing.hpp"
#include "wavetile/phase.hpp"

namespace wavetile {

// One piece of a frequency-side step function: constant amp on the
// half-open interval (lo, hi].
struct ProfilePiece {
  DyadicInterval support;
  Complex amp;
};

// Piecewise-constant profile. Pieces must be pairwise disjoint; validate()
// throws OverlapError otherwise.
struct StepProfile {
  std::vector<ProfilePiece> pieces;

  void validate() const;
  static StepProfile indicator(DyadicInterval iv, Complex amp = {1.0, 0.0});
};

// Finite expansion over the unit lattice modes e_{k,l}.
struct ModeExpansion {
  std::map<Cell, Complex> coeff;
};

// Finite sum of tensor products profile(x1-frequency) x mode(x2).
// Profiles of different terms may overlap; overlap inside one profile is
// an error surfaced by validate().
struct TensorTerm {
  Complex amp{1.0, 0.0};
  StepProfile profile;
  Cell mode;
};

struct TensorSum2D {
  std::vector<TensorTerm> terms;

  void validate() const;
};

// Per-mode disjoint refinement of a TensorSum2D: all pieces attached to
// the same mode, overlaps resolved by splitting at every breakpoint, term
// and piece amplitudes multiplied through, zero-amp spans dropped.
std::map<Cell, std::vector<ProfilePiece>> flatten(const TensorSum2D& f);

double norm_sq(const TensorSum2D& f);
Complex inner_product(const TensorSum2D& f, const TensorSum2D& g);

double norm_sq(const ModeExpansion& f);
Complex inner_product(const ModeExpansion& f, const ModeExpansion& g);

// Stored coefficient of e_{k,l}, zero when absent.
Complex mode_coefficient(const ModeExpansion& f, std::int64_t k, std::int64_t l);

// L2-normalized dilation by 2^j in the x1 direction:
// f_j(x1, x2) = 2^(-j/2) f(2^-j x1, x2). Frequency side: pieces scale by
// 2^-j and amplitudes by 2^(j/2).
TensorSum2D dilate_x1(const TensorSum2D& f, std::int64_t j);

// Total variation of the flattened per-mode profile (sum of jump sizes);
// used for certified Fourier-tail bounds.
double profile_variation(const std::vector<ProfilePiece>& pieces);

// Space-side value of the inverse transform of a profile at dyadic x.
Complex profile_space_value(const std::vector<ProfilePiece>& pieces,
                            const Dyadic& x);

}  // namespace wavetile
