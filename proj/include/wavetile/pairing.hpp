#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wavetile/errors.hpp"

namespace wavetile {

// A lattice cell index (k, l) in Z^2.
struct Cell {
  std::int64_t k = 0;
  std::int64_t l = 0;
  auto operator<=>(const Cell&) const = default;
};

enum class PairScheme { kSpiral, kBoustrophedon, kTable };

// A bijection Z^2 -> {1, 2, ...}.
//
// kSpiral walks square rings counterclockwise: (0,0) -> 1, (1,0) -> 2,
// (1,1) -> 3, then left along the top, down the left side, right along the
// bottom; ring r ends at (r,-r) with index (2r+1)^2.
// kBoustrophedon uses the same rings but reverses the walk on even rings.
// kTable reads the assignment from a loaded list: entry i (0-based) names
// the cell with index i+1; a null entry leaves that index unassigned.
struct PairingSpec {
  PairScheme scheme = PairScheme::kSpiral;
  std::vector<std::optional<Cell>> table;

  static PairingSpec spiral() { return PairingSpec{}; }
  static PairingSpec boustrophedon() {
    PairingSpec spec;
    spec.scheme = PairScheme::kBoustrophedon;
    return spec;
  }
  static PairingSpec from_table(std::vector<std::optional<Cell>> rows);

  // Built by from_table: cell -> every 1-based index assigned to it,
  // ascending. Duplicate assignments are kept so consistency checks and
  // fault-injection paths can see them.
  std::map<Cell, std::vector<std::int64_t>> index_of;
};

// Index of cell (k, l); >= 1. Table scheme: first assigned index, or
// TableMissError when the cell is absent.
std::int64_t pair(const PairingSpec& spec, std::int64_t k, std::int64_t l);

// Inverse of pair. Throws BadIndexError for m < 1 and TableMissError for a
// table index that is out of range or unassigned.
Cell unpair(const PairingSpec& spec, std::int64_t m);

// All indices a table assigns to the cell (exactly one for the built-in
// schemes).
std::vector<std::int64_t> pair_all(const PairingSpec& spec, std::int64_t k,
                                   std::int64_t l);

struct BijectionReport {
  bool pass = false;
  std::int64_t checked = 0;
  std::string violation;  // empty when pass
};

// Checks round-trips pair(unpair(m)) == m for m in 1..N, and that the
// radius-R ball (largest R with (2R+1)^2 <= N) maps exactly onto
// {1, ..., (2R+1)^2}.
BijectionReport verify_bijection(const PairingSpec& spec, std::int64_t n);

}  // namespace wavetile
