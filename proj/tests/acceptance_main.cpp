// Acceptance gate: runs every advertised guarantee at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit 0 only when all pass.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wavetile/frames.hpp"
#include "wavetile/generator.hpp"
#include "wavetile/io.hpp"
#include "wavetile/pairing.hpp"
#include "wavetile/sampling.hpp"
#include "wavetile/testfn.hpp"
#include "wavetile/tiling.hpp"

namespace fs = std::filesystem;
using namespace wavetile;

namespace {

constexpr double kSlack = 1e-12;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = true;
  std::string detail;
};

GeneratorSpec make_spec(const PairingSpec& pairing, int m_bands = 24) {
  return {pairing, m_bands, 16};
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

// Criterion 1: the truncated generator norm is exactly 1 - 2^-M.
Outcome crit_norm(const PairingSpec& pairing) {
  for (int m = 1; m <= 30; ++m) {
    Dyadic got = psi_hat_norm_sq(make_spec(pairing, m));
    Dyadic want = Dyadic(1) - Dyadic::pow2(-m);
    if (!(got == want)) {
      return {false, "norm mismatch at M=" + std::to_string(m)};
    }
  }
  return {true, "exact for M=1..30"};
}

// Criterion 2: at random exact (s, y) the frequency-side value has exactly
// one active band and modulus exactly 0 or 1.
Outcome crit_single_term(const PairingSpec& pairing) {
  GeneratorSpec spec = make_spec(pairing, 60);
  std::mt19937_64 rng(kSeed);
  const DyadicInterval mag{Dyadic(0), Dyadic::pow2(-1)};
  const DyadicInterval y_range{Dyadic(-4), Dyadic(4)};
  const std::int64_t samples = 100000;
  for (std::int64_t i = 0; i < samples; ++i) {
    Dyadic s = random_dyadic_in(rng, mag);
    if (uniform_below(rng, 2) == 1) s = -s;
    Dyadic y = random_dyadic_in(rng, y_range);
    int bands = 0;
    std::int64_t band = 0;
    for (std::int64_t m = 1; m <= 32; ++m) {
      if (band_support(m).contains(s.abs())) {
        ++bands;
        band = m;
      }
    }
    if (bands != 1) return {false, "band count " + std::to_string(bands)};
    PhaseValue v = psi_hat(spec, s, y);
    double mod = v.modulus();
    if (mod != 0.0 && mod != 1.0) return {false, "modulus " + fmt(mod)};
    Cell cell = unpair(pairing, band);
    bool in_cell = Dyadic(cell.k) < y && y <= Dyadic(cell.k + 1);
    if (v.zero == in_cell) {
      return {false, "support mismatch at sample " + std::to_string(i)};
    }
  }
  return {true, std::to_string(samples) + " samples, one band each"};
}

// Criterion 3: gram matrix over (k, m) in [-3, 3]^2 at M=24 is the identity
// within 2^-23 entrywise, exactly zero across scales.
Outcome crit_orthonormality(const PairingSpec& pairing) {
  GeneratorSpec spec = make_spec(pairing);
  const double tol = std::ldexp(1.0, -23);
  double worst = 0.0;
  for (std::int64_t ka = -3; ka <= 3; ++ka) {
    for (std::int64_t ma = -3; ma <= 3; ++ma) {
      for (std::int64_t kb = -3; kb <= 3; ++kb) {
        for (std::int64_t mb = -3; mb <= 3; ++mb) {
          GramEntry g = gram_entry(spec, {ka, ma}, {kb, mb});
          if (ka != kb && g.value != Complex(0.0, 0.0)) {
            return {false, "cross-scale entry not exactly zero"};
          }
          bool diag = ka == kb && ma == mb;
          worst = std::max(
              worst, std::abs(g.value - Complex(diag ? 1.0 : 0.0, 0.0)));
        }
      }
    }
  }
  if (worst > tol) return {false, "entry defect " + fmt(worst)};
  return {true, "2401 entries, worst defect " + fmt(worst)};
}

// Criterion 4: energy balance on the preset family; zero defect once the
// scale window covers the active scales, certified bounds otherwise.
Outcome crit_parseval(const PairingSpec& pairing) {
  GeneratorSpec spec = make_spec(pairing);
  auto family = parseval_family(spec);
  if (family.size() < 20) return {false, "family too small"};
  double worst_full = 0.0;
  for (const auto& [name, f] : family) {
    VerificationReport full = parseval_check(spec, f, -10, 10, std::nullopt);
    worst_full = std::max(worst_full, full.defect);
    if (full.defect > kSlack || !full.pass) {
      return {false, name + " full-window defect " + fmt(full.defect)};
    }
    VerificationReport shifts = parseval_check(spec, f, -10, 10, 16);
    if (shifts.defect > shifts.certified_bound + kSlack || !shifts.pass) {
      return {false, name + " truncated shifts defect " + fmt(shifts.defect) +
                         " bound " + fmt(shifts.certified_bound)};
    }
    VerificationReport scales = parseval_check(spec, f, 0, 3, std::nullopt);
    if (scales.defect > scales.certified_bound + kSlack || !scales.pass) {
      return {false, name + " truncated scales defect " + fmt(scales.defect)};
    }
  }
  return {true, std::to_string(family.size()) + " presets, worst full defect " +
                    fmt(worst_full)};
}

ModeExpansion random_modes(std::mt19937_64& rng) {
  ModeExpansion f;
  std::int64_t n = 1 + static_cast<std::int64_t>(uniform_below(rng, 32));
  for (std::int64_t i = 0; i < n; ++i) {
    Cell cell{static_cast<std::int64_t>(uniform_below(rng, 9)) - 4,
              static_cast<std::int64_t>(uniform_below(rng, 9)) - 4};
    double re = (static_cast<double>(uniform_below(rng, 33)) - 16.0) / 8.0;
    double im = (static_cast<double>(uniform_below(rng, 33)) - 16.0) / 8.0;
    f.coeff[cell] = {re, im};
  }
  return f;
}

std::vector<std::pair<ModeExpansion, ModeExpansion>> random_mode_pairs(
    std::size_t count) {
  std::mt19937_64 rng(kSeed + 1);
  std::vector<std::pair<ModeExpansion, ModeExpansion>> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pairs.emplace_back(random_modes(rng), random_modes(rng));
  }
  return pairs;
}

// Criterion 5: the continuous transform preserves random inner products.
Outcome crit_continuous(const PairingSpec& pairing) {
  GeneratorSpec spec = make_spec(pairing);
  double worst = 0.0;
  for (const auto& [f, g] : random_mode_pairs(100)) {
    VerificationReport r = continuous_isometry_check(spec, f, g);
    double rel = std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.rhs));
    worst = std::max(worst, rel);
    if (rel > kSlack) return {false, "relative defect " + fmt(rel)};
  }
  return {true, "100 pairs, worst relative defect " + fmt(worst)};
}

// Criterion 6: pointwise frequency-domain isometry at random exact xi.
Outcome crit_discrete(const PairingSpec& pairing) {
  GeneratorSpec spec = make_spec(pairing);
  auto pairs = random_mode_pairs(20);
  std::mt19937_64 rng(kSeed + 2);
  const DyadicInterval mag{Dyadic(0), Dyadic(4)};
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Dyadic xi = random_dyadic_in(rng, mag);
    if (uniform_below(rng, 2) == 1) xi = -xi;
    for (const auto& [f, g] : pairs) {
      VerificationReport r = discrete_isometry_check(spec, f, g, xi);
      double rel = std::abs(r.lhs - r.rhs) / (1.0 + std::abs(r.rhs));
      worst = std::max(worst, rel);
      if (rel > kSlack || !r.pass) {
        return {false, "defect " + fmt(rel) + " at xi=" + xi.decimal_string()};
      }
    }
  }
  return {true, "20000 checks, worst relative defect " + fmt(worst)};
}

// Criterion 7: half-axis energies of the two-sided band profile.
Outcome crit_admissibility() {
  auto [sp, sm] = admissibility_integrals(preset_profile("shannon"));
  const double ln2 = std::log(2.0);
  if (std::abs(sp - ln2) > kSlack || std::abs(sm - ln2) > kSlack) {
    return {false, "unnormalized profile off ln 2"};
  }
  auto [np, nm] = admissibility_integrals(preset_profile("shannon-normalized"));
  if (std::abs(np - 1.0) > kSlack || std::abs(nm - 1.0) > kSlack) {
    return {false, "normalized profile off 1"};
  }
  return {true, "both profiles within 1e-12"};
}

// Criterion 8: sampling identity is exact on the full band at every
// truncation; quarter-band defect obeys the 2/(pi^2 T) bound and halves as
// T doubles.
Outcome crit_sampling() {
  StepProfile full = preset_profile("full-band");
  for (std::int64_t t : {0, 1, 5, 16, 256, 1024}) {
    VerificationReport r = sampling_identity_check(full, full, 0, t);
    if (r.defect != 0.0) {
      return {false, "full band not exact at t=" + std::to_string(t)};
    }
  }
  StepProfile quarter = preset_profile("quarter-band");
  const double pi = std::acos(-1.0);
  double prev = 0.0;
  for (std::int64_t t = 16; t <= 1024; t *= 2) {
    VerificationReport r = sampling_identity_check(quarter, quarter, 0, t);
    double cap = 2.0 / (pi * pi * static_cast<double>(t));
    if (r.defect > cap) {
      return {false, "defect " + fmt(r.defect) + " above " + fmt(cap) +
                         " at t=" + std::to_string(t)};
    }
    if (t > 16) {
      double ratio = r.defect / prev;
      if (ratio < 0.45 || ratio > 0.55) {
        return {false, "decay ratio " + fmt(ratio) + " at t=" + std::to_string(t)};
      }
    }
    prev = r.defect;
  }
  return {true, "exact on full band; quarter-band halves per doubling"};
}

// Criterion 9: quadrature of the reproducing integral converges through
// every refinement and lands under 1e-3 on the default grid.
Outcome crit_quadrature(const PairingSpec& pairing) {
  GeneratorSpec spec = make_spec(pairing);
  auto start = std::chrono::steady_clock::now();
  VerificationReport r = calderon_quadrature(
      spec, preset_tensor(spec, "band-e00"), CalderonGrid{}, 1e-3);
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start).count();
  std::vector<double> trace;
  for (const auto& level : r.params["trace"]) {
    trace.push_back(level["defect"].get<double>());
  }
  if (trace.size() < 2) return {false, "no refinement trace"};
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (!(trace[i] < trace[i - 1])) {
      return {false, "trace not decreasing at level " + std::to_string(i)};
    }
  }
  if (!(trace.back() < 1e-3) || !r.pass) {
    return {false, "final defect " + fmt(trace.back())};
  }
  if (secs > 120.0) return {false, "took " + fmt(secs) + "s"};
  return {true, std::to_string(trace.size()) + " levels down to " +
                    fmt(trace.back()) + " in " + fmt(secs) + "s"};
}

// Criterion 10: sampled covering, exact disjoint measure balance, and exact
// scaling covariance of the 4d location.
Outcome crit_tiling(const PairingSpec& pairing) {
  GeneratorSpec spec = make_spec(pairing);
  Window4D unit = preset_window("unit");
  VerificationReport covering = covering_check(spec, unit, 100000, kSeed);
  if (!covering.pass) {
    return {false, "covering: " + covering.params.value("first_violation", "")};
  }
  VerificationReport balance = disjointness_and_measure(spec, unit, 24);
  if (!balance.pass) return {false, "measure balance failed"};
  std::mt19937_64 rng(kSeed + 3);
  const DyadicInterval centered{-Dyadic::pow2(-1), Dyadic::pow2(-1)};
  const DyadicInterval mag{Dyadic(0), Dyadic::pow2(-1)};
  for (int i = 0; i < 10000; ++i) {
    Dyadic x1 = random_dyadic_in(rng, centered);
    Dyadic x2 = random_dyadic_in(rng, centered);
    Dyadic xi1 = random_dyadic_in(rng, mag);
    if (uniform_below(rng, 2) == 1) xi1 = -xi1;
    Dyadic xi2 = random_dyadic_in(rng, centered);
    std::int64_t j = static_cast<std::int64_t>(uniform_below(rng, 13)) - 6;
    TileIndex base = locate_4d(spec, x1, x2, xi1, xi2);
    TileIndex moved =
        locate_4d(spec, x1.mul_pow2(j), x2, xi1.mul_pow2(-j), xi2);
    if (moved.k != base.k + j || moved.m != base.m) {
      return {false, "covariance broken at sample " + std::to_string(i)};
    }
  }
  return {true, "100000 covering samples, exact balance, 10000 covariant"};
}

PairingSpec loaded_table_pairing() {
  std::vector<std::optional<Cell>> rows;
  const std::int64_t count = 81 * 81;  // radius 40
  rows.reserve(count);
  PairingSpec source = PairingSpec::boustrophedon();
  for (std::int64_t i = 1; i <= count; ++i) {
    rows.emplace_back(unpair(source, i));
  }
  fs::path path = fs::temp_directory_path() / "wavetile-acceptance-table.json";
  {
    std::ofstream out(path);
    out << table_to_json(rows).dump() << "\n";
  }
  std::ifstream in(path);
  Json j = Json::parse(in);
  return PairingSpec::from_table(table_from_json(j));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    Outcome (*run)(const PairingSpec&);
  };
  const std::vector<Criterion> pairing_criteria = {
      {1, "truncated generator norm", crit_norm},
      {2, "single-term frequency evaluation", crit_single_term},
      {3, "discrete orthonormality", crit_orthonormality},
      {4, "energy balance across presets", crit_parseval},
      {5, "continuous isometry on random pairs", crit_continuous},
      {6, "pointwise discrete isometry", crit_discrete},
  };

  PairingSpec spiral = PairingSpec::spiral();
  int failures = 0;
  std::vector<bool> spiral_results;
  auto report = [&failures](int id, const std::string& name, const Outcome& o) {
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " ("
              << name << "): " << o.detail << "\n";
  };

  for (const auto& c : pairing_criteria) {
    Outcome o = c.run(spiral);
    spiral_results.push_back(o.pass);
    report(c.id, c.name, o);
  }
  report(7, "admissibility constants", crit_admissibility());
  report(8, "band-limited sampling decay", crit_sampling());
  report(9, "reproducing quadrature convergence", crit_quadrature(spiral));
  Outcome tiling = crit_tiling(spiral);
  spiral_results.push_back(tiling.pass);
  report(10, "tiling covering and measure", tiling);

  // Criterion 11: the pairing-dependent criteria must come out the same for
  // the built-in bijection and one loaded from a table.
  {
    PairingSpec table = loaded_table_pairing();
    Outcome o{true, "criteria 1-6 and 10 identical under a loaded table"};
    std::size_t slot = 0;
    for (const auto& c : pairing_criteria) {
      Outcome t = c.run(table);
      if (t.pass != spiral_results[slot]) {
        o = {false, "criterion " + std::to_string(c.id) + " diverged: " + t.detail};
      }
      ++slot;
    }
    Outcome t10 = crit_tiling(table);
    if (o.pass && t10.pass != spiral_results[slot]) {
      o = {false, "criterion 10 diverged: " + t10.detail};
    }
    report(11, "pairing independence", o);
  }

  if (failures == 0) {
    std::cout << "all criteria pass\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
