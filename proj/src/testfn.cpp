#include "wavetile/testfn.hpp"

#include <algorithm>
#include <set>

namespace wavetile {

void StepProfile::validate() const {
  std::vector<const ProfilePiece*> sorted;
  sorted.reserve(pieces.size());
  for (const auto& p : pieces) {
    if (p.support.hi < p.support.lo) throw ParseError("profile piece with lo > hi");
    sorted.push_back(&p);
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->support.lo < b->support.lo;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->support.lo < sorted[i - 1]->support.hi) {
      throw OverlapError("profile pieces overlap at " +
                         sorted[i]->support.lo.decimal_string());
    }
  }
}

StepProfile StepProfile::indicator(DyadicInterval iv, Complex amp) {
  return StepProfile{{ProfilePiece{std::move(iv), amp}}};
}

void TensorSum2D::validate() const {
  for (const auto& t : terms) t.profile.validate();
}

std::map<Cell, std::vector<ProfilePiece>> flatten(const TensorSum2D& f) {
  f.validate();
  std::map<Cell, std::vector<ProfilePiece>> raw;
  for (const auto& t : f.terms) {
    for (const auto& p : t.profile.pieces) {
      if (p.support.empty()) continue;
      raw[t.mode].push_back(ProfilePiece{p.support, t.amp * p.amp});
    }
  }
  std::map<Cell, std::vector<ProfilePiece>> out;
  for (auto& [mode, pieces] : raw) {
    std::set<Dyadic> cuts;
    for (const auto& p : pieces) {
      cuts.insert(p.support.lo);
      cuts.insert(p.support.hi);
    }
    std::vector<ProfilePiece> flat;
    auto it = cuts.begin();
    for (auto next = std::next(it); next != cuts.end(); ++it, ++next) {
      DyadicInterval span{*it, *next};
      Complex amp(0.0, 0.0);
      for (const auto& p : pieces) {
        if (!(span.lo < p.support.lo) && !(p.support.hi < span.hi)) {
          amp += p.amp;
        }
      }
      if (amp != Complex(0.0, 0.0)) flat.push_back(ProfilePiece{span, amp});
    }
    if (!flat.empty()) out[mode] = std::move(flat);
  }
  return out;
}

double norm_sq(const TensorSum2D& f) {
  double total = 0.0;
  for (const auto& [mode, pieces] : flatten(f)) {
    for (const auto& p : pieces) {
      total += std::norm(p.amp) * p.support.length().to_double();
    }
  }
  return total;
}

Complex inner_product(const TensorSum2D& f, const TensorSum2D& g) {
  auto ff = flatten(f);
  auto fg = flatten(g);
  Complex total(0.0, 0.0);
  for (const auto& [mode, fp] : ff) {
    auto it = fg.find(mode);
    if (it == fg.end()) continue;
    for (const auto& a : fp) {
      for (const auto& b : it->second) {
        auto overlap = interval_intersect(a.support, b.support);
        if (!overlap) continue;
        total += a.amp * std::conj(b.amp) * overlap->length().to_double();
      }
    }
  }
  return total;
}

double norm_sq(const ModeExpansion& f) {
  double total = 0.0;
  for (const auto& [mode, c] : f.coeff) total += std::norm(c);
  return total;
}

Complex inner_product(const ModeExpansion& f, const ModeExpansion& g) {
  Complex total(0.0, 0.0);
  for (const auto& [mode, c] : f.coeff) {
    auto it = g.coeff.find(mode);
    if (it != g.coeff.end()) total += c * std::conj(it->second);
  }
  return total;
}

Complex mode_coefficient(const ModeExpansion& f, std::int64_t k, std::int64_t l) {
  auto it = f.coeff.find(Cell{k, l});
  return it == f.coeff.end() ? Complex(0.0, 0.0) : it->second;
}

TensorSum2D dilate_x1(const TensorSum2D& f, std::int64_t j) {
  TensorSum2D out;
  out.terms.reserve(f.terms.size());
  for (const auto& t : f.terms) {
    TensorTerm nt;
    nt.amp = t.amp * pow2_half(j);
    nt.mode = t.mode;
    for (const auto& p : t.profile.pieces) {
      nt.profile.pieces.push_back(ProfilePiece{
          DyadicInterval{p.support.lo.mul_pow2(-j), p.support.hi.mul_pow2(-j)},
          p.amp});
    }
    out.terms.push_back(std::move(nt));
  }
  return out;
}

double profile_variation(const std::vector<ProfilePiece>& pieces) {
  std::vector<const ProfilePiece*> sorted;
  for (const auto& p : pieces) {
    if (!p.support.empty()) sorted.push_back(&p);
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->support.lo < b->support.lo;
  });
  double v = 0.0;
  Complex prev(0.0, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    bool abuts = i > 0 && sorted[i - 1]->support.hi == sorted[i]->support.lo;
    if (!abuts) {
      v += std::abs(prev);
      prev = Complex(0.0, 0.0);
    }
    v += std::abs(sorted[i]->amp - prev);
    prev = sorted[i]->amp;
  }
  v += std::abs(prev);
  return v;
}

Complex profile_space_value(const std::vector<ProfilePiece>& pieces,
                            const Dyadic& x) {
  Complex total(0.0, 0.0);
  for (const auto& p : pieces) {
    total += p.amp * band_integral(x, p.support.lo, p.support.hi);
  }
  return total;
}

}  // namespace wavetile
