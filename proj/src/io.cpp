#include "wavetile/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string_view>

#include "wavetile/errors.hpp"
#include "wavetile/generator.hpp"

namespace wavetile {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return std::isdigit(c) != 0;
         });
}

[[noreturn]] void reject(const std::string& text, const std::string& why) {
  throw ParseError("bad dyadic literal '" + text + "': " + why);
}

// Leading zeros must go before BigInt construction: the string constructor
// would read "0375" as octal.
BigInt big_from_digits(std::string_view digits) {
  std::size_t i = 0;
  while (i + 1 < digits.size() && digits[i] == '0') ++i;
  return BigInt{std::string(digits.substr(i))};
}

std::int64_t parse_small_int(std::string_view digits, const std::string& text) {
  std::int64_t value = 0;
  auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size()) {
    reject(text, "exponent out of range");
  }
  return value;
}

// Fraction parts longer than this would need a 5^d with thousands of limbs
// before the exponent guard in Dyadic could fire.
constexpr std::size_t kMaxFracDigits = 4096;

Dyadic parse_unsigned_dyadic(std::string_view body, const std::string& text) {
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num)) reject(text, "numerator must be an integer");
    BigInt p = big_from_digits(num);
    if (den.substr(0, 2) == "2^") {
      std::string_view e = den.substr(2);
      if (!all_digits(e)) reject(text, "denominator exponent must be an integer");
      return Dyadic(p, -parse_small_int(e, text));
    }
    if (!all_digits(den)) reject(text, "denominator must be an integer or 2^q");
    BigInt d = big_from_digits(den);
    if (d.is_zero()) reject(text, "zero denominator");
    unsigned bits = boost::multiprecision::msb(d);
    if (d != BigInt(1) << bits) reject(text, "denominator is not a power of two");
    return Dyadic(p, -static_cast<std::int64_t>(bits));
  }
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot);
    std::string_view fp = body.substr(dot + 1);
    if (!all_digits(ip) || !all_digits(fp)) reject(text, "malformed decimal");
    if (fp.size() > kMaxFracDigits) reject(text, "fraction part too long");
    BigInt p = big_from_digits(std::string(ip) + std::string(fp));
    // p / 10^d is dyadic exactly when 5^d divides p.
    BigInt five = boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(fp.size()));
    if (p % five != 0) reject(text, "not an exact dyadic; use p/2^q");
    return Dyadic(p / five, -static_cast<std::int64_t>(fp.size()));
  }
  if (!all_digits(body)) reject(text, "expected p/2^q, p/q, a decimal, or an integer");
  return Dyadic(big_from_digits(body), 0);
}

double scrub_zero(double x) { return x == 0.0 ? 0.0 : x; }

void require(bool ok, const std::string& why) {
  if (!ok) throw ParseError("bad json input: " + why);
}

Cell cell_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_number_integer() &&
              j[1].is_number_integer(),
          "cell must be [k, l]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

Json cell_to_json(const Cell& c) { return Json::array({c.k, c.l}); }

TensorSum2D mono(DyadicInterval support, Cell mode) {
  return {{TensorTerm{{1.0, 0.0}, StepProfile::indicator(support), mode}}};
}

}  // namespace

Dyadic parse_dyadic(const std::string& text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) reject(text, "empty");
  Dyadic v = parse_unsigned_dyadic(s, text);
  return negative ? -v : v;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, scrub_zero(x));
  return std::string(buf, res.ptr);
}

std::string format_complex(const Complex& z) {
  std::string re = format_double(z.real());
  std::string im = format_double(z.imag());
  if (im.front() != '-') re += '+';
  return re + im + "i";
}

Json to_json(const Dyadic& x) {
  return Json{{"mant", x.mant_string()}, {"exp", x.exp()}};
}

Json to_json(const DyadicInterval& iv) {
  return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}};
}

Json to_json(const Complex& z) {
  return Json::array({scrub_zero(z.real()), scrub_zero(z.imag())});
}

Json to_json(const VerificationReport& report) {
  Json j;
  j["check"] = report.check;
  j["lhs"] = to_json(report.lhs);
  j["rhs"] = to_json(report.rhs);
  j["defect"] = report.defect;
  j["certified_bound"] = report.certified_bound;
  j["pass"] = report.pass;
  j["params"] = report.params;
  return j;
}

Json to_json(const StepProfile& profile) {
  Json pieces = Json::array();
  for (const auto& p : profile.pieces) {
    pieces.push_back(Json{{"support", to_json(p.support)}, {"amp", to_json(p.amp)}});
  }
  return pieces;
}

Json to_json(const TensorSum2D& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms) {
    terms.push_back(Json{{"amp", to_json(t.amp)},
                         {"profile", to_json(t.profile)},
                         {"mode", cell_to_json(t.mode)}});
  }
  return Json{{"terms", terms}};
}

Json to_json(const ModeExpansion& f) {
  Json entries = Json::array();
  for (const auto& [cell, amp] : f.coeff) {
    entries.push_back(Json{{"cell", cell_to_json(cell)}, {"amp", to_json(amp)}});
  }
  return entries;
}

Dyadic dyadic_from_json(const Json& j) {
  if (j.is_string()) return parse_dyadic(j.get<std::string>());
  if (j.is_number_integer()) return Dyadic(j.get<std::int64_t>());
  require(j.is_object() && j.contains("mant") && j.contains("exp") &&
              j["mant"].is_string() && j["exp"].is_number_integer(),
          "dyadic must be a literal string, an integer, or {mant, exp}");
  std::string mant = j["mant"].get<std::string>();
  std::string_view digits = mant;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  require(all_digits(digits), "mant must be a decimal integer string");
  BigInt m = big_from_digits(digits);
  if (digits.size() != mant.size()) m = -m;
  return Dyadic(m, j["exp"].get<std::int64_t>());
}

DyadicInterval interval_from_json(const Json& j) {
  require(j.is_object() && j.contains("lo") && j.contains("hi"),
          "interval must be {lo, hi}");
  return make_interval(dyadic_from_json(j["lo"]), dyadic_from_json(j["hi"]));
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          "complex must be [re, im] or a number");
  return {j[0].get<double>(), j[1].get<double>()};
}

StepProfile profile_from_json(const Json& j) {
  require(j.is_array(), "profile must be an array of pieces");
  StepProfile profile;
  for (const auto& p : j) {
    require(p.is_object() && p.contains("support") && p.contains("amp"),
            "profile piece must be {support, amp}");
    profile.pieces.push_back(
        {interval_from_json(p["support"]), complex_from_json(p["amp"])});
  }
  profile.validate();
  return profile;
}

TensorSum2D tensor_from_json(const Json& j) {
  require(j.is_object() && j.contains("terms") && j["terms"].is_array(),
          "tensor must be {terms: [...]}");
  TensorSum2D f;
  for (const auto& t : j["terms"]) {
    require(t.is_object() && t.contains("profile") && t.contains("mode"),
            "tensor term must be {amp?, profile, mode}");
    TensorTerm term;
    if (t.contains("amp")) term.amp = complex_from_json(t["amp"]);
    term.profile = profile_from_json(t["profile"]);
    term.mode = cell_from_json(t["mode"]);
    f.terms.push_back(std::move(term));
  }
  f.validate();
  return f;
}

ModeExpansion modes_from_json(const Json& j) {
  require(j.is_array(), "mode expansion must be an array of entries");
  ModeExpansion f;
  for (const auto& e : j) {
    require(e.is_object() && e.contains("cell") && e.contains("amp"),
            "mode entry must be {cell, amp}");
    Cell cell = cell_from_json(e["cell"]);
    require(f.coeff.find(cell) == f.coeff.end(), "duplicate mode cell");
    f.coeff[cell] = complex_from_json(e["amp"]);
  }
  return f;
}

Json table_to_json(const std::vector<std::optional<Cell>>& rows) {
  Json j = Json::array();
  for (const auto& row : rows) {
    if (row) {
      j.push_back(cell_to_json(*row));
    } else {
      j.push_back(nullptr);
    }
  }
  return j;
}

std::vector<std::optional<Cell>> table_from_json(const Json& j) {
  require(j.is_array(), "table must be an array of cells or nulls");
  std::vector<std::optional<Cell>> rows;
  rows.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_null()) {
      rows.emplace_back(std::nullopt);
    } else {
      rows.emplace_back(cell_from_json(e));
    }
  }
  return rows;
}

std::string slice_csv(const std::vector<SliceRow>& rows) {
  std::string out = "k,m,x1_lo,x1_hi,xi1_lo,xi1_hi,r\n";
  for (const auto& row : rows) {
    out += std::to_string(row.idx.k) + ',' + std::to_string(row.idx.m) + ',' +
           row.x1.lo.decimal_string() + ',' + row.x1.hi.decimal_string() + ',' +
           row.xi1.lo.decimal_string() + ',' + row.xi1.hi.decimal_string() +
           ',' + std::to_string(row.r) + '\n';
  }
  return out;
}

ModeExpansion preset_modes(const std::string& name) {
  ModeExpansion f;
  if (name == "e00") {
    f.coeff[{0, 0}] = {1.0, 0.0};
  } else if (name == "e10") {
    f.coeff[{1, 0}] = {1.0, 0.0};
  } else if (name == "e01") {
    f.coeff[{0, 1}] = {1.0, 0.0};
  } else if (name == "mix") {
    f.coeff[{0, 0}] = {0.5, 0.0};
    f.coeff[{2, -1}] = {0.0, 1.0};
  } else {
    throw ParseError("unknown mode preset '" + name + "'");
  }
  return f;
}

StepProfile preset_profile(const std::string& name) {
  const Dyadic half = Dyadic::pow2(-1);
  if (name == "shannon" || name == "shannon-normalized") {
    Complex amp{1.0, 0.0};
    if (name != "shannon") amp = {1.0 / std::sqrt(std::log(2.0)), 0.0};
    return {{{{Dyadic(-1), -half}, amp}, {{half, Dyadic(1)}, amp}}};
  }
  if (name == "full-band") return StepProfile::indicator({-half, half});
  if (name == "quarter-band") {
    return StepProfile::indicator({-Dyadic::pow2(-2), Dyadic::pow2(-2)});
  }
  throw ParseError("unknown profile preset '" + name + "'");
}

TensorSum2D preset_tensor(const GeneratorSpec& spec, const std::string& name) {
  for (auto& [family_name, f] : parseval_family(spec)) {
    if (family_name == name) return f;
  }
  throw ParseError("unknown tensor preset '" + name + "'");
}

Window4D preset_window(const std::string& name) {
  if (name == "unit") {
    const Dyadic half = Dyadic::pow2(-1);
    DyadicInterval centered{-half, half};
    return {centered, centered, {Dyadic::pow2(-6), half}, centered};
  }
  throw ParseError("unknown window preset '" + name + "'");
}

std::vector<std::pair<std::string, TensorSum2D>> parseval_family(
    const GeneratorSpec& spec) {
  std::vector<std::pair<std::string, TensorSum2D>> family;
  const std::pair<const char*, Cell> modes[] = {
      {"e00", {0, 0}}, {"e10", {1, 0}}, {"e01", {0, 1}}, {"e1n1", {1, -1}}};
  for (std::int64_t d = 1; d <= 5; ++d) {
    for (const auto& [tag, mode] : modes) {
      family.emplace_back("b" + std::to_string(d) + "-" + tag,
                          mono(band_support(d), mode));
    }
  }
  family.emplace_back("band-e00",
                      mono({Dyadic::pow2(-2), Dyadic::pow2(-1)}, {0, 0}));
  family.emplace_back(
      "band58", mono({Dyadic(BigInt(5), -3), Dyadic(BigInt(3), -2)}, {0, 0}));
  TensorSum2D trunc;
  for (std::int64_t d = 1; d <= spec.band_cutoff; ++d) {
    DyadicInterval pos = band_support(d);
    StepProfile profile{{{{-pos.hi, -pos.lo}, {1.0, 0.0}}, {pos, {1.0, 0.0}}}};
    trunc.terms.push_back({{1.0, 0.0}, std::move(profile), unpair(spec.pairing, d)});
  }
  family.emplace_back("psi-trunc", std::move(trunc));
  return family;
}

}  // namespace wavetile
