#include "wavetile/pairing.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace wavetile;

namespace {

// Independent spiral oracle: walk the counterclockwise square spiral one
// step at a time and record the visit order.
std::map<Cell, std::int64_t> spiral_walk(std::int64_t steps) {
  std::map<Cell, std::int64_t> order;
  std::int64_t k = 0, l = 0;
  order[Cell{0, 0}] = 1;
  std::int64_t m = 2;
  for (std::int64_t r = 1; m <= steps + 1; ++r) {
    ++k;  // enter the ring on the right edge
    order[Cell{k, l}] = m++;
    while (l < r) order[Cell{k, ++l}] = m++;
    while (k > -r) order[Cell{--k, l}] = m++;
    while (l > -r) order[Cell{k, --l}] = m++;
    while (k < r) order[Cell{++k, l}] = m++;
  }
  return order;
}

}  // namespace

TEST_CASE("spiral pairing matches the stated first ring") {
  PairingSpec spec = PairingSpec::spiral();
  CHECK(pair(spec, 0, 0) == 1);
  CHECK(pair(spec, 1, 0) == 2);
  CHECK(pair(spec, 1, 1) == 3);
  CHECK(pair(spec, 0, 1) == 4);
  CHECK(pair(spec, -1, 1) == 5);
  CHECK(pair(spec, -1, 0) == 6);
  CHECK(pair(spec, -1, -1) == 7);
  CHECK(pair(spec, 0, -1) == 8);
  CHECK(pair(spec, 1, -1) == 9);
  CHECK(unpair(spec, 1) == Cell{0, 0});
  CHECK(unpair(spec, 4) == Cell{0, 1});
  CHECK(unpair(spec, 8) == Cell{0, -1});
  CHECK_THROWS_AS(unpair(spec, 0), BadIndexError);
  CHECK_THROWS_AS(unpair(spec, -3), BadIndexError);
}

TEST_CASE("spiral pairing matches the walk oracle") {
  PairingSpec spec = PairingSpec::spiral();
  auto oracle = spiral_walk(2400);
  for (const auto& [cell, m] : oracle) {
    CHECK(pair(spec, cell.k, cell.l) == m);
    CHECK(unpair(spec, m) == cell);
  }
}

TEST_CASE("boustrophedon reverses even rings only") {
  PairingSpec spec = PairingSpec::boustrophedon();
  PairingSpec spiral = PairingSpec::spiral();
  CHECK(pair(spec, 0, 0) == 1);
  // Ring 1 (odd) matches the spiral.
  for (std::int64_t m = 2; m <= 9; ++m) CHECK(unpair(spec, m) == unpair(spiral, m));
  // Ring 2 (even) runs backwards: first index 10 lands on the spiral's last
  // ring-2 cell (2, -2), and 25 on the spiral's first (2, -1).
  CHECK(unpair(spec, 10) == Cell{2, -2});
  CHECK(unpair(spec, 25) == Cell{2, -1});
  CHECK(pair(spec, 2, -2) == 10);
  CHECK(pair(spec, 2, -1) == 25);
}

TEST_CASE("built-in schemes verify as bijections") {
  CHECK(verify_bijection(PairingSpec::spiral(), 10000).pass);
  CHECK(verify_bijection(PairingSpec::boustrophedon(), 10000).pass);
}

TEST_CASE("ball coverage is the square prefix") {
  PairingSpec spec = PairingSpec::spiral();
  for (std::int64_t radius : {1, 2, 3, 7}) {
    std::set<std::int64_t> seen;
    for (std::int64_t k = -radius; k <= radius; ++k)
      for (std::int64_t l = -radius; l <= radius; ++l)
        seen.insert(pair(spec, k, l));
    std::int64_t count = (2 * radius + 1) * (2 * radius + 1);
    CHECK(static_cast<std::int64_t>(seen.size()) == count);
    CHECK(*seen.begin() == 1);
    CHECK(*seen.rbegin() == count);
  }
}

TEST_CASE("table pairing round-trips and reports faults") {
  std::vector<std::optional<Cell>> rows;
  PairingSpec spiral = PairingSpec::spiral();
  for (std::int64_t m = 1; m <= 25; ++m) rows.push_back(unpair(spiral, m));
  PairingSpec table = PairingSpec::from_table(rows);
  CHECK(verify_bijection(table, 25).pass);
  CHECK(pair(table, 0, 1) == 4);
  CHECK(unpair(table, 9) == Cell{1, -1});
  CHECK_THROWS_AS(pair(table, 40, 40), TableMissError);
  CHECK_THROWS_AS(unpair(table, 26), TableMissError);

  SUBCASE("duplicate entry fails injectivity") {
    auto dup = rows;
    dup[4] = dup[2];  // index 5 now repeats index 3's cell
    auto report = verify_bijection(PairingSpec::from_table(dup), 10);
    CHECK(!report.pass);
    CHECK(report.checked == 5);
  }
  SUBCASE("gap fails surjectivity") {
    auto gap = rows;
    gap[2] = std::nullopt;  // index 3 unassigned
    auto report = verify_bijection(PairingSpec::from_table(gap), 10);
    CHECK(!report.pass);
    CHECK(report.checked == 3);
  }
}
