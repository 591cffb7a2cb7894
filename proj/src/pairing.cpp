#include "wavetile/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace wavetile {
namespace {

std::int64_t ring_of(std::int64_t k, std::int64_t l) {
  return std::max(std::llabs(k), std::llabs(l));
}

// 1-based position of (k, l) within its ring's counterclockwise walk,
// starting at (r, -(r-1)). Ring r has 8r cells.
std::int64_t spiral_ring_offset(std::int64_t k, std::int64_t l) {
  std::int64_t r = ring_of(k, l);
  if (k == r && l >= -(r - 1)) return l + r;            // right edge, going up
  if (l == r) return 2 * r + (r - k);                   // top edge, going left
  if (k == -r) return 4 * r + (r - l);                  // left edge, going down
  return 6 * r + (k + r);                               // bottom edge, going right
}

Cell spiral_cell_at_offset(std::int64_t r, std::int64_t off) {
  if (off <= 2 * r) return Cell{r, off - r};
  if (off <= 4 * r) return Cell{3 * r - off, r};
  if (off <= 6 * r) return Cell{-r, 5 * r - off};
  return Cell{off - 7 * r, -r};
}

std::int64_t ring_base(std::int64_t r) { return (2 * r - 1) * (2 * r - 1); }

std::int64_t ring_of_index(std::int64_t m) {
  // Smallest r with (2r+1)^2 >= m.
  auto r = static_cast<std::int64_t>((std::sqrt(static_cast<double>(m)) - 1.0) / 2.0);
  r = std::max<std::int64_t>(r - 1, 0);
  while ((2 * r + 1) * (2 * r + 1) < m) ++r;
  return r;
}

std::int64_t walk_index(PairScheme scheme, std::int64_t k, std::int64_t l) {
  std::int64_t r = ring_of(k, l);
  if (r == 0) return 1;
  std::int64_t off = spiral_ring_offset(k, l);
  if (scheme == PairScheme::kBoustrophedon && r % 2 == 0) {
    off = 8 * r + 1 - off;
  }
  return ring_base(r) + off;
}

Cell walk_cell(PairScheme scheme, std::int64_t m) {
  if (m == 1) return Cell{0, 0};
  std::int64_t r = ring_of_index(m);
  std::int64_t off = m - ring_base(r);
  if (scheme == PairScheme::kBoustrophedon && r % 2 == 0) {
    off = 8 * r + 1 - off;
  }
  return spiral_cell_at_offset(r, off);
}

}  // namespace

PairingSpec PairingSpec::from_table(std::vector<std::optional<Cell>> rows) {
  PairingSpec spec;
  spec.scheme = PairScheme::kTable;
  spec.table = std::move(rows);
  for (std::size_t i = 0; i < spec.table.size(); ++i) {
    if (spec.table[i]) {
      spec.index_of[*spec.table[i]].push_back(static_cast<std::int64_t>(i) + 1);
    }
  }
  return spec;
}

std::int64_t pair(const PairingSpec& spec, std::int64_t k, std::int64_t l) {
  if (spec.scheme != PairScheme::kTable) return walk_index(spec.scheme, k, l);
  auto it = spec.index_of.find(Cell{k, l});
  if (it == spec.index_of.end()) {
    throw TableMissError("cell (" + std::to_string(k) + "," + std::to_string(l) +
                         ") not in pairing table");
  }
  return it->second.front();
}

std::vector<std::int64_t> pair_all(const PairingSpec& spec, std::int64_t k,
                                   std::int64_t l) {
  if (spec.scheme != PairScheme::kTable) {
    return {walk_index(spec.scheme, k, l)};
  }
  auto it = spec.index_of.find(Cell{k, l});
  if (it == spec.index_of.end()) return {};
  return it->second;
}

Cell unpair(const PairingSpec& spec, std::int64_t m) {
  if (m < 1) throw BadIndexError("pair index " + std::to_string(m) + " < 1");
  if (spec.scheme != PairScheme::kTable) return walk_cell(spec.scheme, m);
  if (m > static_cast<std::int64_t>(spec.table.size()) || !spec.table[m - 1]) {
    throw TableMissError("pair index " + std::to_string(m) +
                         " unassigned in table");
  }
  return *spec.table[m - 1];
}

BijectionReport verify_bijection(const PairingSpec& spec, std::int64_t n) {
  BijectionReport report;
  for (std::int64_t m = 1; m <= n; ++m) {
    report.checked = m;
    Cell c;
    try {
      c = unpair(spec, m);
    } catch (const Error& e) {
      report.violation = "index " + std::to_string(m) + ": " + e.what();
      return report;
    }
    std::int64_t back = 0;
    try {
      back = pair(spec, c.k, c.l);
    } catch (const Error& e) {
      report.violation = "round-trip at " + std::to_string(m) + ": " + e.what();
      return report;
    }
    if (back != m) {
      report.violation = "index " + std::to_string(m) + " maps to cell (" +
                         std::to_string(c.k) + "," + std::to_string(c.l) +
                         ") already claimed by index " + std::to_string(back);
      return report;
    }
  }
  // Ball coverage: radius-R cells must exhaust the first (2R+1)^2 indices.
  std::int64_t radius = 0;
  while ((2 * (radius + 1) + 1) * (2 * (radius + 1) + 1) <= n) ++radius;
  std::set<std::int64_t> seen;
  for (std::int64_t k = -radius; k <= radius; ++k) {
    for (std::int64_t l = -radius; l <= radius; ++l) {
      std::int64_t m = 0;
      try {
        m = pair(spec, k, l);
      } catch (const Error& e) {
        report.violation = "ball cell (" + std::to_string(k) + "," +
                           std::to_string(l) + "): " + e.what();
        return report;
      }
      if (m < 1 || m > (2 * radius + 1) * (2 * radius + 1) ||
          !seen.insert(m).second) {
        report.violation = "radius-" + std::to_string(radius) +
                           " ball does not map onto its index prefix at (" +
                           std::to_string(k) + "," + std::to_string(l) + ")";
        return report;
      }
    }
  }
  report.pass = true;
  return report;
}

}  // namespace wavetile
