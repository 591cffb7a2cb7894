#pragma once

#include <cstdint>
#include <vector>

#include "wavetile/generator.hpp"
#include "wavetile/report.hpp"
#include "wavetile/tile_index.hpp"

namespace wavetile {

// The symmetric scale band of index r: all s with |s| in (2^-r-1, 2^-r].
// Total length 2^-r; the sets partition the nonzero reals across r in Z,
// and scaling by 2^-k moves index r to r + k.
//
// Pointwise membership is contains(), defined through |s|. neg() returns
// the mirrored half as a (lo, hi] interval; it differs from the pointwise
// set only at the two endpoints, so lengths, abutments, and interval
// intersections all agree with the |s| convention.
struct SymmetricBandSet {
  std::int64_t r = 1;

  DyadicInterval pos() const {
    return {Dyadic::pow2(-r - 1), Dyadic::pow2(-r)};
  }
  DyadicInterval neg() const {
    return {-Dyadic::pow2(-r), -Dyadic::pow2(-r - 1)};
  }
  bool contains(const Dyadic& s) const;
  SymmetricBandSet scaled(std::int64_t k) const { return {r + k}; }
};

struct Point4D {
  Dyadic x1, x2, xi1, xi2;
};

// Dyadic box window; the xi1 factor may straddle 0 (operations split it at
// 0 internally, and the point xi1 = 0 belongs to no tile).
struct Window4D {
  DyadicInterval x1, x2, xi1, xi2;

  Dyadic measure() const {
    return x1.length() * x2.length() * xi1.length() * xi2.length();
  }
};

// One enumerated piece of a tile clipped to a window: the position cell
// (2^k m, 2^k (m+1)] in x1, one unit cell (n, n+1] x (l, l+1] in the
// (x2, xi2) plane, and the xi1 band of index r + k selected by that cell.
struct TileBox {
  TileIndex idx;
  Cell cell;               // (n, l)
  std::int64_t r = 1;      // pairing index of cell
  DyadicInterval x1;       // clipped to the window
  DyadicInterval x2;
  DyadicInterval xi2;
  DyadicInterval xi1_pos;  // clipped band halves; either may be empty
  DyadicInterval xi1_neg;

  Dyadic measure() const {
    return x1.length() * x2.length() * xi2.length() *
           (xi1_pos.length() + xi1_neg.length());
  }
};

// Scale/shift cell of the 1D tiling: k from the frequency band of xi,
// m from the length-2^k position cell of x. Throws ZeroFrequencyError
// when xi == 0.
TileIndex locate_1d(const Dyadic& x, const Dyadic& xi);

// Block of the 4D tiling containing the point: the (x2, xi2) unit cell
// selects the band shift r through the pairing, then k and m follow as in
// the 1D tiling with the band moved by r. Throws ZeroFrequencyError when
// xi1 == 0, and TableMissError when the cell has no table row.
TileIndex locate_4d(const GeneratorSpec& spec, const Dyadic& x1,
                    const Dyadic& x2, const Dyadic& xi1, const Dyadic& xi2);

// Direct evaluation of the block indicator at the point; independent of
// locate_4d, so it serves as its oracle. Every pairing row of the point's
// (x2, xi2) cell counts, so duplicate table rows make several blocks claim
// the point and a missing row makes none claim it.
bool tile_membership(const GeneratorSpec& spec, TileIndex idx,
                     const Point4D& pt);

// Draws exact grid points in the window (resolution 2^-30) and verifies,
// per point, that locate_4d's tile contains it and no other tile meeting
// the window (band index up to spec.band_cutoff) does. Points with
// xi1 = 0 are skipped and counted. Pass means no violations; params carry
// the first violation if any.
VerificationReport covering_check(const GeneratorSpec& spec,
                                  const Window4D& window,
                                  std::int64_t samples, std::uint64_t seed);

// Enumerates every tile piece meeting the window with band index
// r + k <= m_cap and pairing index r <= m_cap, computes the exact measure
// of each piece, checks the pieces are pairwise disjoint, and balances the
// measure sum against the window measure minus the exact omitted mass
// (bands deeper than m_cap plus rows with r > m_cap). Every quantity is
// exact dyadic; pass requires exact balance and no overlaps.
VerificationReport disjointness_and_measure(const GeneratorSpec& spec,
                                            const Window4D& window,
                                            std::int64_t m_cap);

// All tile pieces meeting the window, clipped to it; the enumeration
// behind disjointness_and_measure and covering_check, exposed for reuse.
std::vector<TileBox> enumerate_tiles(const GeneratorSpec& spec,
                                     const Window4D& window,
                                     std::int64_t m_cap);

// One tile of the (x1, xi1) slice through a fixed (x2, xi2): the tile's
// own extents (not clipped to the window), one row per band half meeting
// the window. r is the pairing index of the slice's unit cell.
struct SliceRow {
  TileIndex idx;
  std::int64_t r = 1;
  DyadicInterval x1;
  DyadicInterval xi1;
};

// Tiles of the slice plane through (x2, xi2) meeting the (x1, xi1) window,
// band index r + k <= m_cap; rows ordered by (k, m, xi1.lo).
std::vector<SliceRow> export_slice(const GeneratorSpec& spec,
                                   const Dyadic& x2, const Dyadic& xi2,
                                   const DyadicInterval& x1_window,
                                   const DyadicInterval& xi1_window,
                                   std::int64_t m_cap);

}  // namespace wavetile
