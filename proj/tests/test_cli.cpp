#include <doctest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(WAVETILE_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), out};
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "wavetile-cli-e2e" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli evaluates the documented example points") {
  RunResult r = run_cli("eval psi-hat --s 3/8 --y 1/2");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1+0i\n");

  r = run_cli("eval psi-space --x1 0 --y 1/2 --L 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "0.5+0i"));
  CHECK(contains(r.output, "tail<="));

  r = run_cli("eval shannon-hat --xi 3/4");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1\n");

  r = run_cli("tiling locate --point 1/2 1/2 3/8 1/2");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "(0,0)\n");
}

TEST_CASE("cli eval grids carry coordinates and write csv") {
  fs::path dir = fresh_dir("eval-grid");
  RunResult r = run_cli("eval psi-hat --s 3/8 --s 3/16 --y 1/2 --out " +
                        dir.string());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "0.375,0.5,"));
  std::string csv = read_file(dir / "eval-psi-hat.csv");
  CHECK(contains(csv, "s,y,re,im\n"));
  CHECK(contains(csv, "0.375,0.5,1,0\n"));
  CHECK(contains(csv, "0.1875,0.5,"));
}

TEST_CASE("cli verify suites pass and fail with the contract exit codes") {
  RunResult r = run_cli("verify orthonormality --range 3 --M 24");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "orthonormality: pass"));

  r = run_cli("verify discrete-isometry --xi 3/8 --preset e00");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "pass lhs=1+0i rhs=1+0i"));

  r = run_cli("verify parseval --preset b1-e00");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "defect=0 "));

  r = run_cli("verify parseval --preset psi-trunc --m-limit 32");
  CHECK(r.exit_code == 0);

  r = run_cli("verify continuous-isometry --f mix --g e00");
  CHECK(r.exit_code == 0);

  r = run_cli("verify admissibility --profile shannon --expect ln2");
  CHECK(r.exit_code == 0);

  r = run_cli("verify admissibility --profile shannon");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "admissibility: FAIL"));

  r = run_cli("verify sampling --profile quarter-band --t 64");
  CHECK(r.exit_code == 0);

  r = run_cli("verify calderon --preset band-e00 --grid coarse");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.output, "calderon: FAIL"));

  r = run_cli("verify calderon --preset band-e00");
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli tiling checks run on the unit window") {
  RunResult r = run_cli("tiling covering --samples 2000 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "tiling-covering: pass"));

  r = run_cli("tiling disjointness --M 20");
  CHECK(r.exit_code == 0);

  r = run_cli("tiling disjointness --M 20 --x1 0 1 --x2 0 1 --xi1 0 1/2 --xi2 0 1");
  CHECK(r.exit_code == 0);

  fs::path dir = fresh_dir("slice");
  r = run_cli("tiling export-slice --x2 1/2 --xi2 1/2 --out " +
              (dir / "slice.csv").string());
  CHECK(r.exit_code == 0);
  std::string csv = read_file(dir / "slice.csv");
  CHECK(contains(csv, "k,m,x1_lo,x1_hi,xi1_lo,xi1_hi,r\n"));
  CHECK(contains(csv, "0,0,0,1,0.25,0.5,1\n"));
  CHECK(contains(csv, "4,0,0,16,0.015625,0.03125,1\n"));
}

TEST_CASE("cli rejects malformed input with exit code 2") {
  CHECK(run_cli("eval psi-hat --s 0.1 --y 1/2").exit_code == 2);
  CHECK(run_cli("eval psi-hat --s 1/3 --y 0").exit_code == 2);
  CHECK(run_cli("tiling locate --point 1/2 1/2 0 1/2").exit_code == 2);
  CHECK(run_cli("tiling locate --point 1/2 1/2").exit_code == 2);
  CHECK(run_cli("tiling covering --xi1 -1/2^30 0 --samples 50").exit_code == 2);
  CHECK(run_cli("verify parseval --preset nope").exit_code == 2);
  CHECK(run_cli("verify orthonormality --M 0").exit_code == 2);
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli reports are byte-identical across reruns") {
  fs::path a = fresh_dir("det-a");
  fs::path b = fresh_dir("det-b");
  std::string cmd = "tiling covering --samples 1000 --seed 3 --out ";
  CHECK(run_cli(cmd + a.string()).exit_code == 0);
  CHECK(run_cli(cmd + b.string()).exit_code == 0);
  CHECK(read_file(a / "covering.jsonl") == read_file(b / "covering.jsonl"));

  std::string verify_cmd = "verify parseval --out ";
  CHECK(run_cli(verify_cmd + a.string()).exit_code == 0);
  CHECK(run_cli(verify_cmd + b.string()).exit_code == 0);
  std::string lines = read_file(a / "parseval.jsonl");
  CHECK(lines == read_file(b / "parseval.jsonl"));
  // One json line per family member.
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 23);
}

TEST_CASE("cli runs every suite against a dumped pairing table") {
  fs::path dir = fresh_dir("table");
  std::string table = (dir / "table.json").string();
  RunResult r = run_cli("pairing dump --pairing boustrophedon --radius 3 --out " + table);
  CHECK(r.exit_code == 0);

  r = run_cli("pairing verify --pairing " + table + " --n 49");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "pairing-bijection: pass"));

  r = run_cli("verify orthonormality --range 2 --pairing " + table);
  CHECK(r.exit_code == 0);

  r = run_cli("tiling covering --samples 500 --pairing " + table);
  CHECK(r.exit_code == 0);

  // Cells outside the dumped radius have no row: locating there must fail
  // as an input error, not crash.
  r = run_cli("tiling locate --pairing " + table + " --point 1/2 9/2 3/8 1/2");
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli config file sets the run and flags override it") {
  fs::path dir = fresh_dir("config");
  {
    std::ofstream out(dir / "cfg.json");
    out << R"({"M": 20, "L": 8, "seed": 11, "pairing": "boustrophedon",)"
        << R"( "tolerances": {"slack": 1e-12, "calderon": 1e-3}})";
  }
  std::string cfg = " --config " + (dir / "cfg.json").string();

  RunResult r = run_cli("verify orthonormality --range 2" + cfg);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "bound=1.9073486328125e-06"));  // 2^(1-20)

  r = run_cli("verify orthonormality --range 2 --M 24" + cfg);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "bound=1.1920928955078125e-07"));  // flag wins

  {
    std::ofstream out(dir / "bad.json");
    out << R"({"M": 20, "unknown_key": 1})";
  }
  CHECK(run_cli("verify orthonormality --config " +
                (dir / "bad.json").string()).exit_code == 2);
  {
    std::ofstream out(dir / "hostile.json");
    out << "{not json";
  }
  CHECK(run_cli("verify orthonormality --config " +
                (dir / "hostile.json").string()).exit_code == 2);
}
