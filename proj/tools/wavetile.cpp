#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wavetile/errors.hpp"
#include "wavetile/frames.hpp"
#include "wavetile/generator.hpp"
#include "wavetile/io.hpp"
#include "wavetile/pairing.hpp"
#include "wavetile/testfn.hpp"
#include "wavetile/tiling.hpp"

namespace fs = std::filesystem;
using namespace wavetile;

namespace {

struct RunConfig {
  PairingSpec pairing = PairingSpec::spiral();
  std::string pairing_name = "spiral";
  int band_cutoff = 24;
  std::int64_t mode_cutoff = 16;
  std::uint64_t seed = 7;
  std::string out_dir;
  double calderon_tol = 1e-3;
  double float_slack = 1e-12;

  GeneratorSpec generator() const {
    return {pairing, band_cutoff, mode_cutoff};
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return Json::parse(in);
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << data;
}

// --out names either a file (recognized by extension) or a directory that
// receives the default file name.
fs::path resolve_out_file(const std::string& out, const std::string& name,
                          const std::string& ext) {
  fs::path p(out);
  if (p.extension() == ext) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
  }
  fs::create_directories(p);
  return p / name;
}

void apply_pairing(RunConfig& cfg, const std::string& name) {
  if (name == "spiral") {
    cfg.pairing = PairingSpec::spiral();
  } else if (name == "boustrophedon") {
    cfg.pairing = PairingSpec::boustrophedon();
  } else {
    cfg.pairing = PairingSpec::from_table(table_from_json(read_json_file(name)));
  }
  cfg.pairing_name = name;
}

void apply_config(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw ParseError("config must be a json object");
  for (const auto& [key, value] : j.items()) {
    if (key == "pairing") {
      if (value.is_string()) {
        apply_pairing(cfg, value.get<std::string>());
      } else if (value.is_object() && value.contains("table") &&
                 value["table"].is_string()) {
        apply_pairing(cfg, value["table"].get<std::string>());
      } else {
        throw ParseError("config pairing must be a name or {table: path}");
      }
    } else if (key == "M") {
      if (!value.is_number_integer()) throw ParseError("config M must be an integer");
      cfg.band_cutoff = value.get<int>();
    } else if (key == "L") {
      if (!value.is_number_integer()) throw ParseError("config L must be an integer");
      cfg.mode_cutoff = value.get<std::int64_t>();
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw ParseError("config seed must be a nonnegative integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      if (!value.is_string()) throw ParseError("config out must be a string");
      cfg.out_dir = value.get<std::string>();
    } else if (key == "tolerances") {
      if (!value.is_object()) throw ParseError("config tolerances must be an object");
      for (const auto& [tkey, tval] : value.items()) {
        if (!tval.is_number()) throw ParseError("config tolerance must be a number");
        if (tkey == "calderon") {
          cfg.calderon_tol = tval.get<double>();
        } else if (tkey == "slack") {
          cfg.float_slack = tval.get<double>();
        } else {
          throw ParseError("unknown config tolerance '" + tkey + "'");
        }
      }
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
}

void validate_config(const RunConfig& cfg) {
  if (cfg.band_cutoff < 1) throw ParseError("M must be >= 1");
  if (cfg.mode_cutoff < 0) throw ParseError("L must be >= 0");
  if (!(cfg.calderon_tol > 0)) throw ParseError("calderon tolerance must be > 0");
  if (!(cfg.float_slack > 0)) throw ParseError("slack must be > 0");
}

bool is_json_path(const std::string& s) {
  return s.size() > 5 && s.substr(s.size() - 5) == ".json";
}

ModeExpansion resolve_modes(const std::string& name) {
  if (is_json_path(name)) return modes_from_json(read_json_file(name));
  return preset_modes(name);
}

StepProfile resolve_profile(const std::string& name) {
  if (is_json_path(name)) return profile_from_json(read_json_file(name));
  return preset_profile(name);
}

TensorSum2D resolve_tensor(const GeneratorSpec& spec, const std::string& name) {
  if (is_json_path(name)) return tensor_from_json(read_json_file(name));
  return preset_tensor(spec, name);
}

Window4D resolve_window(const std::string& name,
                        const std::vector<std::string>& x1,
                        const std::vector<std::string>& x2,
                        const std::vector<std::string>& xi1,
                        const std::vector<std::string>& xi2) {
  Window4D w = preset_window(name);
  auto apply = [](DyadicInterval& iv, const std::vector<std::string>& pair) {
    if (!pair.empty()) {
      iv = make_interval(parse_dyadic(pair[0]), parse_dyadic(pair[1]));
    }
  };
  apply(w.x1, x1);
  apply(w.x2, x2);
  apply(w.xi1, xi1);
  apply(w.xi2, xi2);
  return w;
}

void print_report(const VerificationReport& r) {
  std::cout << r.check << ": " << (r.pass ? "pass" : "FAIL")
            << " lhs=" << format_complex(r.lhs) << " rhs=" << format_complex(r.rhs)
            << " defect=" << format_double(r.defect)
            << " bound=" << format_double(r.certified_bound) << "\n";
}

int finish(const RunConfig& cfg, const std::string& suite,
           const std::vector<VerificationReport>& reports) {
  bool all = true;
  std::string lines;
  for (const auto& r : reports) {
    all = all && r.pass;
    lines += to_json(r).dump() + "\n";
    print_report(r);
  }
  if (!cfg.out_dir.empty()) {
    fs::path path = resolve_out_file(cfg.out_dir, suite + ".jsonl", ".jsonl");
    write_file(path, lines);
  }
  return all ? 0 : 1;
}

std::vector<Dyadic> parse_all(const std::vector<std::string>& texts) {
  std::vector<Dyadic> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_dyadic(t));
  return out;
}

int run_eval_psi_hat(const RunConfig& cfg, const std::vector<std::string>& s_in,
                     const std::vector<std::string>& y_in) {
  GeneratorSpec spec = cfg.generator();
  auto ss = parse_all(s_in);
  auto ys = parse_all(y_in);
  bool single = ss.size() == 1 && ys.size() == 1;
  std::string csv = "s,y,re,im\n";
  for (const auto& s : ss) {
    for (const auto& y : ys) {
      Complex v = psi_hat(spec, s, y).to_complex();
      if (single) {
        std::cout << format_complex(v) << "\n";
      } else {
        std::cout << s.decimal_string() << "," << y.decimal_string() << ","
                  << format_complex(v) << "\n";
      }
      csv += s.decimal_string() + ',' + y.decimal_string() + ',' +
             format_double(v.real()) + ',' + format_double(v.imag()) + '\n';
    }
  }
  if (!cfg.out_dir.empty()) {
    write_file(resolve_out_file(cfg.out_dir, "eval-psi-hat.csv", ".csv"), csv);
  }
  return 0;
}

int run_eval_psi_space(const RunConfig& cfg, const std::vector<std::string>& x1_in,
                       const std::vector<std::string>& y_in) {
  GeneratorSpec spec = cfg.generator();
  auto xs = parse_all(x1_in);
  auto ys = parse_all(y_in);
  bool single = xs.size() == 1 && ys.size() == 1;
  std::string csv = "x1,y,re,im,tail_bound\n";
  for (const auto& x1 : xs) {
    for (const auto& y : ys) {
      SpaceValue v = psi_space(spec, x1.to_double(), y);
      std::string prefix =
          single ? "" : x1.decimal_string() + "," + y.decimal_string() + ",";
      std::cout << prefix << format_complex(v.value)
                << " tail<=" << format_double(v.tail_bound) << "\n";
      csv += x1.decimal_string() + ',' + y.decimal_string() + ',' +
             format_double(v.value.real()) + ',' + format_double(v.value.imag()) +
             ',' + format_double(v.tail_bound) + '\n';
    }
  }
  if (!cfg.out_dir.empty()) {
    write_file(resolve_out_file(cfg.out_dir, "eval-psi-space.csv", ".csv"), csv);
  }
  return 0;
}

int run_eval_shannon_hat(const RunConfig& cfg, const std::vector<std::string>& xi_in) {
  auto xis = parse_all(xi_in);
  std::string csv = "xi,value\n";
  for (const auto& xi : xis) {
    int v = shannon_hat(xi);
    if (xis.size() == 1) {
      std::cout << v << "\n";
    } else {
      std::cout << xi.decimal_string() << "," << v << "\n";
    }
    csv += xi.decimal_string() + ',' + std::to_string(v) + '\n';
  }
  if (!cfg.out_dir.empty()) {
    write_file(resolve_out_file(cfg.out_dir, "eval-shannon-hat.csv", ".csv"), csv);
  }
  return 0;
}

int run_orthonormality(const RunConfig& cfg, int range) {
  if (range < 0) throw ParseError("range must be >= 0");
  GeneratorSpec spec = cfg.generator();
  double worst = 0.0;
  std::int64_t cross_nonzero = 0;
  std::int64_t entries = 0;
  for (std::int64_t ka = -range; ka <= range; ++ka) {
    for (std::int64_t ma = -range; ma <= range; ++ma) {
      for (std::int64_t kb = -range; kb <= range; ++kb) {
        for (std::int64_t mb = -range; mb <= range; ++mb) {
          GramEntry g = gram_entry(spec, {ka, ma}, {kb, mb});
          bool diag = ka == kb && ma == mb;
          worst = std::max(worst, std::abs(g.value - Complex(diag ? 1.0 : 0.0, 0.0)));
          if (ka != kb && g.value != Complex(0.0, 0.0)) ++cross_nonzero;
          ++entries;
        }
      }
    }
  }
  VerificationReport r;
  r.check = "orthonormality";
  r.lhs = {worst, 0.0};
  r.defect = worst + static_cast<double>(cross_nonzero);
  r.certified_bound = std::ldexp(1.0, 1 - cfg.band_cutoff);
  r.pass = r.defect <= r.certified_bound;
  r.params["range"] = range;
  r.params["band_cutoff"] = cfg.band_cutoff;
  r.params["entries"] = entries;
  r.params["worst_entry_defect"] = worst;
  r.params["cross_scale_nonzero"] = cross_nonzero;
  return finish(cfg, "orthonormality", {r});
}

int run_parseval(const RunConfig& cfg, const std::string& preset, std::int64_t k_lo,
                 std::int64_t k_hi, std::int64_t m_limit) {
  if (k_lo > k_hi) throw ParseError("k window is empty");
  if (m_limit < -1) throw ParseError("m-limit must be >= 0, or -1 for all shifts");
  GeneratorSpec spec = cfg.generator();
  std::optional<std::int64_t> limit;
  if (m_limit >= 0) limit = m_limit;
  std::vector<std::pair<std::string, TensorSum2D>> inputs;
  if (preset == "all") {
    inputs = parseval_family(spec);
  } else {
    inputs.emplace_back(preset, resolve_tensor(spec, preset));
  }
  std::vector<VerificationReport> reports;
  reports.reserve(inputs.size());
  for (const auto& [name, f] : inputs) {
    VerificationReport r = parseval_check(spec, f, k_lo, k_hi, limit);
    r.params["preset"] = name;
    reports.push_back(std::move(r));
  }
  return finish(cfg, "parseval", reports);
}

int run_continuous_isometry(const RunConfig& cfg, const std::string& f_name,
                            const std::string& g_name) {
  GeneratorSpec spec = cfg.generator();
  ModeExpansion f2 = resolve_modes(f_name);
  ModeExpansion g2 = g_name.empty() ? f2 : resolve_modes(g_name);
  VerificationReport r = continuous_isometry_check(spec, f2, g2);
  r.params["f"] = f_name;
  r.params["g"] = g_name.empty() ? f_name : g_name;
  return finish(cfg, "continuous-isometry", {r});
}

int run_discrete_isometry(const RunConfig& cfg, const std::string& xi_text,
                          const std::string& preset, const std::string& f_name,
                          const std::string& g_name) {
  GeneratorSpec spec = cfg.generator();
  std::string f_src = f_name.empty() ? preset : f_name;
  std::string g_src = g_name.empty() ? f_src : g_name;
  ModeExpansion f2 = resolve_modes(f_src);
  ModeExpansion g2 = resolve_modes(g_src);
  VerificationReport r = discrete_isometry_check(spec, f2, g2, parse_dyadic(xi_text));
  r.params["f"] = f_src;
  r.params["g"] = g_src;
  return finish(cfg, "discrete-isometry", {r});
}

int run_admissibility(const RunConfig& cfg, const std::string& profile_name,
                      const std::string& expect) {
  StepProfile profile = resolve_profile(profile_name);
  auto [i_plus, i_minus] = admissibility_integrals(profile);
  double target = 0.0;
  if (expect == "ln2") {
    target = std::log(2.0);
  } else {
    std::size_t used = 0;
    try {
      target = std::stod(expect, &used);
    } catch (const std::exception&) {
      throw ParseError("bad expectation '" + expect + "'");
    }
    if (used != expect.size()) throw ParseError("bad expectation '" + expect + "'");
  }
  VerificationReport r;
  r.check = "admissibility";
  r.lhs = {i_plus, 0.0};
  r.rhs = {i_minus, 0.0};
  r.defect = std::max(std::abs(i_plus - target), std::abs(i_minus - target));
  r.certified_bound = 0.0;
  r.pass = r.defect <= cfg.float_slack;
  r.params["profile"] = profile_name;
  r.params["target"] = target;
  r.params["slack"] = cfg.float_slack;
  return finish(cfg, "admissibility", {r});
}

int run_sampling(const RunConfig& cfg, const std::string& f_name,
                 const std::string& g_name, std::int64_t k, std::int64_t t) {
  StepProfile fp = resolve_profile(f_name);
  StepProfile gp = g_name.empty() ? fp : resolve_profile(g_name);
  VerificationReport r = sampling_identity_check(fp, gp, k, t);
  r.params["f"] = f_name;
  r.params["g"] = g_name.empty() ? f_name : g_name;
  return finish(cfg, "sampling", {r});
}

int run_calderon(const RunConfig& cfg, const std::string& preset,
                 const std::string& grid_name, double tol) {
  GeneratorSpec spec = cfg.generator();
  TensorSum2D f = resolve_tensor(spec, preset);
  CalderonGrid grid;
  if (grid_name == "coarse") {
    grid.s_nodes = 4;
    grid.u_nodes = 4;
    grid.refine_levels = 1;
  } else if (grid_name != "default") {
    throw ParseError("unknown grid '" + grid_name + "'");
  }
  VerificationReport r = calderon_quadrature(spec, f, grid, tol);
  r.params["preset"] = preset;
  r.params["grid"] = grid_name;
  return finish(cfg, "calderon", {r});
}

int run_tiling_locate(const RunConfig& cfg, const std::vector<std::string>& point) {
  auto coords = parse_all(point);
  TileIndex idx =
      locate_4d(cfg.generator(), coords[0], coords[1], coords[2], coords[3]);
  std::cout << "(" << idx.k << "," << idx.m << ")\n";
  return 0;
}

int run_tiling_covering(const RunConfig& cfg, const Window4D& window,
                        std::int64_t samples) {
  VerificationReport r = covering_check(cfg.generator(), window, samples, cfg.seed);
  if (r.params["checked"].get<std::int64_t>() == 0) {
    std::cerr << "error: no usable samples; the xi1 window contains only 0\n";
    return 2;
  }
  return finish(cfg, "covering", {r});
}

int run_tiling_disjointness(const RunConfig& cfg, const Window4D& window) {
  VerificationReport r =
      disjointness_and_measure(cfg.generator(), window, cfg.band_cutoff);
  return finish(cfg, "disjointness", {r});
}

int run_tiling_export_slice(const RunConfig& cfg, const std::string& x2_text,
                            const std::string& xi2_text,
                            const std::vector<std::string>& x1_pair,
                            const std::vector<std::string>& xi1_pair) {
  const Dyadic half = Dyadic::pow2(-1);
  DyadicInterval x1w{-half, half};
  DyadicInterval xi1w{Dyadic::pow2(-6), half};
  if (!x1_pair.empty()) {
    x1w = make_interval(parse_dyadic(x1_pair[0]), parse_dyadic(x1_pair[1]));
  }
  if (!xi1_pair.empty()) {
    xi1w = make_interval(parse_dyadic(xi1_pair[0]), parse_dyadic(xi1_pair[1]));
  }
  auto rows = export_slice(cfg.generator(), parse_dyadic(x2_text),
                           parse_dyadic(xi2_text), x1w, xi1w, cfg.band_cutoff);
  std::string csv = slice_csv(rows);
  if (cfg.out_dir.empty()) {
    std::cout << csv;
  } else {
    fs::path path = resolve_out_file(cfg.out_dir, "slice.csv", ".csv");
    write_file(path, csv);
    std::cout << "wrote " << rows.size() << " rows to " << path.string() << "\n";
  }
  return 0;
}

int run_pairing_verify(const RunConfig& cfg, std::int64_t n) {
  BijectionReport b = verify_bijection(cfg.pairing, n);
  VerificationReport r;
  r.check = "pairing-bijection";
  r.defect = b.pass ? 0.0 : 1.0;
  r.pass = b.pass;
  r.params["scheme"] = cfg.pairing_name;
  r.params["checked"] = b.checked;
  if (!b.pass) r.params["violation"] = b.violation;
  return finish(cfg, "pairing", {r});
}

int run_pairing_dump(const RunConfig& cfg, std::int64_t radius) {
  if (radius < 0) throw ParseError("radius must be >= 0");
  if (radius > 512) throw ParseError("radius too large");
  std::int64_t count = (2 * radius + 1) * (2 * radius + 1);
  std::vector<std::optional<Cell>> rows;
  rows.reserve(count);
  for (std::int64_t i = 1; i <= count; ++i) {
    rows.emplace_back(unpair(cfg.pairing, i));
  }
  std::string text = table_to_json(rows).dump() + "\n";
  if (cfg.out_dir.empty()) {
    std::cout << text;
  } else {
    fs::path path = resolve_out_file(cfg.out_dir, "table.json", ".json");
    write_file(path, text);
    std::cout << "wrote " << count << " entries to " << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification tool for the paired-lattice wavelet tiling"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_flag;
  std::string pairing_flag;
  std::uint64_t seed_flag = 0;
  int m_flag = 0;
  std::int64_t l_flag = 0;
  double slack_flag = 0.0;
  app.add_option("--config", config_path, "json run configuration file");
  auto* out_opt = app.add_option("--out", out_flag, "report/csv output location");
  auto* seed_opt = app.add_option("--seed", seed_flag, "sampling seed");
  auto* m_opt = app.add_option("--M", m_flag, "band cutoff, >= 1 (default 24)");
  auto* l_opt = app.add_option("--L", l_flag, "mode cutoff, >= 0 (default 16)");
  auto* pairing_opt = app.add_option(
      "--pairing", pairing_flag, "spiral | boustrophedon | table json path");
  auto* slack_opt = app.add_option("--slack", slack_flag, "float-level allowance");

  auto* eval = app.add_subcommand("eval", "pointwise evaluation");
  eval->require_subcommand(1);
  eval->fallthrough();

  std::vector<std::string> ph_s, ph_y;
  auto* eval_psi_hat =
      eval->add_subcommand("psi-hat", "frequency-side generator values");
  eval_psi_hat->fallthrough();
  eval_psi_hat->add_option("--s", ph_s, "scale coordinates (dyadic)")->required();
  eval_psi_hat->add_option("--y", ph_y, "lattice coordinates (dyadic)")->required();

  std::vector<std::string> ps_x1, ps_y;
  auto* eval_psi_space =
      eval->add_subcommand("psi-space", "space-side partial sums with tail bound");
  eval_psi_space->fallthrough();
  eval_psi_space->add_option("--x1", ps_x1, "space coordinates (dyadic)")->required();
  eval_psi_space->add_option("--y", ps_y, "lattice coordinates (dyadic)")->required();

  std::vector<std::string> sh_xi;
  auto* eval_shannon =
      eval->add_subcommand("shannon-hat", "band indicator values");
  eval_shannon->fallthrough();
  eval_shannon->add_option("--xi", sh_xi, "frequencies (dyadic)")->required();

  auto* verify = app.add_subcommand("verify", "identity checks with reports");
  verify->require_subcommand(1);
  verify->fallthrough();

  int ortho_range = 3;
  auto* v_ortho = verify->add_subcommand(
      "orthonormality", "gram matrix of the discrete system against identity");
  v_ortho->fallthrough();
  v_ortho->add_option("--range", ortho_range, "scale/shift window half-width");

  std::string pv_preset = "all";
  std::int64_t pv_klo = -10, pv_khi = 10, pv_mlimit = -1;
  auto* v_parseval =
      verify->add_subcommand("parseval", "energy balance of discrete coefficients");
  v_parseval->fallthrough();
  v_parseval->add_option("--preset", pv_preset, "test function name, json path, or all");
  v_parseval->add_option("--k-lo", pv_klo, "lowest scale");
  v_parseval->add_option("--k-hi", pv_khi, "highest scale");
  v_parseval->add_option("--m-limit", pv_mlimit, "shift truncation; -1 sums all");

  std::string ci_f = "e00", ci_g;
  auto* v_cont = verify->add_subcommand(
      "continuous-isometry", "inner products under the continuous transform");
  v_cont->fallthrough();
  v_cont->add_option("--f", ci_f, "mode preset or json path");
  v_cont->add_option("--g", ci_g, "second input; defaults to --f");

  std::string di_xi, di_preset = "e00", di_f, di_g;
  auto* v_disc = verify->add_subcommand(
      "discrete-isometry", "pointwise frequency-domain energy balance");
  v_disc->fallthrough();
  v_disc->add_option("--xi", di_xi, "frequency (dyadic, nonzero)")->required();
  v_disc->add_option("--preset", di_preset, "mode preset for both inputs");
  v_disc->add_option("--f", di_f, "mode preset or json path; overrides --preset");
  v_disc->add_option("--g", di_g, "second input; defaults to --f");

  std::string ad_profile = "shannon-normalized", ad_expect = "1";
  auto* v_adm = verify->add_subcommand(
      "admissibility", "half-axis energies of a frequency profile");
  v_adm->fallthrough();
  v_adm->add_option("--profile", ad_profile, "profile preset or json path");
  v_adm->add_option("--expect", ad_expect, "target value; number or ln2");

  std::string sa_profile = "full-band", sa_g;
  std::int64_t sa_k = 0, sa_t = 64;
  auto* v_samp = verify->add_subcommand(
      "sampling", "band-limited sampling identity at one scale");
  v_samp->fallthrough();
  v_samp->add_option("--profile", sa_profile, "profile preset or json path");
  v_samp->add_option("--g", sa_g, "second profile; defaults to --profile");
  v_samp->add_option("--k", sa_k, "scale of the sample lattice");
  v_samp->add_option("--t", sa_t, "sample truncation |m| <= t");

  std::string ca_preset = "band-e00", ca_grid = "default";
  double ca_tol = 0.0;
  auto* v_cald = verify->add_subcommand(
      "calderon", "quadrature of the continuous reproducing integral");
  v_cald->fallthrough();
  v_cald->add_option("--preset", ca_preset, "test function name or json path");
  v_cald->add_option("--grid", ca_grid, "default | coarse");
  auto* ca_tol_opt = v_cald->add_option("--tol", ca_tol, "defect tolerance");

  auto* tiling = app.add_subcommand("tiling", "phase-space tiling checks");
  tiling->require_subcommand(1);
  tiling->fallthrough();

  std::vector<std::string> tl_point;
  auto* t_locate = tiling->add_subcommand("locate", "tile of a 4d point");
  t_locate->fallthrough();
  t_locate->add_option("--point", tl_point, "x1 x2 xi1 xi2 (dyadic)")
      ->expected(4)
      ->required();

  std::string tc_window = "unit";
  std::vector<std::string> tc_x1, tc_x2, tc_xi1, tc_xi2;
  std::int64_t tc_samples = 100000;
  auto* t_cover = tiling->add_subcommand(
      "covering", "random exact points land in exactly their own tile");
  t_cover->fallthrough();
  t_cover->add_option("--window", tc_window, "window preset");
  t_cover->add_option("--x1", tc_x1, "window override: lo hi")->expected(2);
  t_cover->add_option("--x2", tc_x2, "window override: lo hi")->expected(2);
  t_cover->add_option("--xi1", tc_xi1, "window override: lo hi")->expected(2);
  t_cover->add_option("--xi2", tc_xi2, "window override: lo hi")->expected(2);
  t_cover->add_option("--samples", tc_samples, "number of sample points");

  std::string td_window = "unit";
  std::vector<std::string> td_x1, td_x2, td_xi1, td_xi2;
  auto* t_disj = tiling->add_subcommand(
      "disjointness", "exact pairwise disjointness and measure balance");
  t_disj->fallthrough();
  t_disj->add_option("--window", td_window, "window preset");
  t_disj->add_option("--x1", td_x1, "window override: lo hi")->expected(2);
  t_disj->add_option("--x2", td_x2, "window override: lo hi")->expected(2);
  t_disj->add_option("--xi1", td_xi1, "window override: lo hi")->expected(2);
  t_disj->add_option("--xi2", td_xi2, "window override: lo hi")->expected(2);

  std::string ts_x2, ts_xi2;
  std::vector<std::string> ts_x1, ts_xi1;
  auto* t_slice = tiling->add_subcommand(
      "export-slice", "csv of the (x1, xi1) tiles through a fixed (x2, xi2)");
  t_slice->fallthrough();
  t_slice->add_option("--x2", ts_x2, "slice coordinate (dyadic)")->required();
  t_slice->add_option("--xi2", ts_xi2, "slice coordinate (dyadic)")->required();
  t_slice->add_option("--x1", ts_x1, "window: lo hi (default -1/2 1/2)")->expected(2);
  t_slice->add_option("--xi1", ts_xi1, "window: lo hi (default 1/64 1/2)")->expected(2);

  auto* pairing_cmd = app.add_subcommand("pairing", "cell pairing utilities");
  pairing_cmd->require_subcommand(1);
  pairing_cmd->fallthrough();

  std::int64_t pb_n = 2401;
  auto* p_verify =
      pairing_cmd->add_subcommand("verify", "bijection check of the pairing");
  p_verify->fallthrough();
  p_verify->add_option("--n", pb_n, "indices 1..n to round-trip");

  std::int64_t pd_radius = 40;
  auto* p_dump =
      pairing_cmd->add_subcommand("dump", "write the pairing as a table json");
  p_dump->fallthrough();
  p_dump->add_option("--radius", pd_radius, "cell ball radius to cover");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config(cfg, read_json_file(config_path));
    if (out_opt->count() > 0) cfg.out_dir = out_flag;
    if (seed_opt->count() > 0) cfg.seed = seed_flag;
    if (m_opt->count() > 0) cfg.band_cutoff = m_flag;
    if (l_opt->count() > 0) cfg.mode_cutoff = l_flag;
    if (pairing_opt->count() > 0) apply_pairing(cfg, pairing_flag);
    if (slack_opt->count() > 0) cfg.float_slack = slack_flag;
    validate_config(cfg);
    if (ca_tol_opt->count() == 0) ca_tol = cfg.calderon_tol;
    if (!(ca_tol > 0)) throw ParseError("calderon tolerance must be > 0");

    if (eval_psi_hat->parsed()) return run_eval_psi_hat(cfg, ph_s, ph_y);
    if (eval_psi_space->parsed()) return run_eval_psi_space(cfg, ps_x1, ps_y);
    if (eval_shannon->parsed()) return run_eval_shannon_hat(cfg, sh_xi);
    if (v_ortho->parsed()) return run_orthonormality(cfg, ortho_range);
    if (v_parseval->parsed()) {
      return run_parseval(cfg, pv_preset, pv_klo, pv_khi, pv_mlimit);
    }
    if (v_cont->parsed()) return run_continuous_isometry(cfg, ci_f, ci_g);
    if (v_disc->parsed()) {
      return run_discrete_isometry(cfg, di_xi, di_preset, di_f, di_g);
    }
    if (v_adm->parsed()) return run_admissibility(cfg, ad_profile, ad_expect);
    if (v_samp->parsed()) return run_sampling(cfg, sa_profile, sa_g, sa_k, sa_t);
    if (v_cald->parsed()) return run_calderon(cfg, ca_preset, ca_grid, ca_tol);
    if (t_locate->parsed()) return run_tiling_locate(cfg, tl_point);
    if (t_cover->parsed()) {
      return run_tiling_covering(
          cfg, resolve_window(tc_window, tc_x1, tc_x2, tc_xi1, tc_xi2), tc_samples);
    }
    if (t_disj->parsed()) {
      return run_tiling_disjointness(
          cfg, resolve_window(td_window, td_x1, td_x2, td_xi1, td_xi2));
    }
    if (t_slice->parsed()) {
      return run_tiling_export_slice(cfg, ts_x2, ts_xi2, ts_x1, ts_xi1);
    }
    if (p_verify->parsed()) return run_pairing_verify(cfg, pb_n);
    if (p_dump->parsed()) return run_pairing_dump(cfg, pd_radius);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
