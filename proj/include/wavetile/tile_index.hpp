#pragma once

#include <cstdint>

namespace wavetile {

// Scale/shift index of one member of the discrete system: scale 2^k,
// translation 2^k * m.
struct TileIndex {
  std::int64_t k = 0;
  std::int64_t m = 0;
  auto operator<=>(const TileIndex&) const = default;
};

}  // namespace wavetile
