#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oddflow/config.hpp"
#include "oddflow/diagnostics.hpp"
#include "oddflow/io.hpp"
#include "oddflow/scenarios.hpp"

using namespace oddflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("oddflow_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("snapshot byte layout") {
  Snapshot s;
  s.nx = 2;
  s.ny = 1;
  s.names = {"rho"};
  s.fields = {{1.0, -0.5}};
  std::ostringstream out;
  write_snapshot(out, s);
  const std::string b = out.str();
  REQUIRE(b.size() == 4 + 16 + 16 + 16);
  CHECK(b.substr(0, 4) == "ODDF");
  CHECK(b.substr(4, 4) == std::string("\x01\x00\x00\x00", 4));
  CHECK(b.substr(8, 4) == std::string("\x02\x00\x00\x00", 4));
  CHECK(b.substr(12, 4) == std::string("\x01\x00\x00\x00", 4));
  CHECK(b.substr(16, 4) == std::string("\x01\x00\x00\x00", 4));
  CHECK(b.substr(20, 16) == "rho             ");
  // 1.0 = 0x3FF0000000000000 little-endian
  CHECK(b.substr(36, 8) == std::string("\x00\x00\x00\x00\x00\x00\xf0\x3f", 8));
}

TEST_CASE("snapshot round trip is bit exact") {
  auto g = Grid::create(32);
  const State st = random_state(g, 5, 0.1);
  const Snapshot s = snapshot_of(st);
  CHECK(s.names == std::vector<std::string>{"rho", "u1", "u2", "w1", "w2", "omega", "zeta_eff"});
  const fs::path dir = scratch("snap");
  write_snapshot(dir / "a.oddf", s);
  const Snapshot r = read_snapshot(dir / "a.oddf");
  CHECK(r.nx == 32);
  CHECK(r.ny == 32);
  CHECK(r.names == s.names);
  CHECK(r.fields == s.fields);
  write_snapshot(dir / "b.oddf", r);
  CHECK(slurp(dir / "a.oddf") == slurp(dir / "b.oddf"));
  CHECK(fs::file_size(dir / "a.oddf") == 20 + 7 * 16 + 7 * 32 * 32 * 8);
}

TEST_CASE("corrupt snapshots report the failing offset") {
  Snapshot s;
  s.nx = 4;
  s.ny = 4;
  s.names = {"a", "b"};
  s.fields = {std::vector<double>(16, 1.0), std::vector<double>(16, 2.0)};
  std::ostringstream out;
  write_snapshot(out, s);
  const std::string full = out.str();

  std::istringstream truncated(full.substr(0, full.size() - 5));
  try {
    read_snapshot(truncated);
    FAIL("expected SnapshotError");
  } catch (const SnapshotError& e) {
    CHECK(e.offset() == 20 + 32 + 128);
  }
  std::string bad = full;
  bad[0] = 'X';
  std::istringstream bad_magic(bad);
  CHECK_THROWS_AS(read_snapshot(bad_magic), SnapshotError);
  std::string version = full;
  version[4] = 9;
  std::istringstream bad_version(version);
  CHECK_THROWS_AS(read_snapshot(bad_version), SnapshotError);
  std::istringstream header_only(full.substr(0, 10));
  try {
    read_snapshot(header_only);
  } catch (const SnapshotError& e) {
    CHECK(e.offset() == 8);
  }
  CHECK_THROWS_AS(read_snapshot(fs::path("/nonexistent/x.oddf")), std::runtime_error);

  Snapshot mismatched = s;
  mismatched.fields.pop_back();
  std::ostringstream sink;
  CHECK_THROWS_AS(write_snapshot(sink, mismatched), std::invalid_argument);
  Snapshot long_name = s;
  long_name.names[0] = "a_name_longer_than_16";
  CHECK_THROWS_AS(write_snapshot(sink, long_name), std::invalid_argument);
}

TEST_CASE("CSV time series") {
  CHECK(diagnostics_header() ==
        "t,kinetic_energy,rho_min,rho_max,u_L2,grad_u_inf,hess_rho_inf,div_u_inf,div_w_inf,compat_inf,E_s,E_lower,"
        "H_upper,A_t,grad_pi0_L2,grad_pi0_inf,vorticity_residual");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);

  const fs::path dir = scratch("csv");
  {
    CsvWriter w(dir / "t.csv", {"a", "b"});
    w.row(std::vector<double>{1.0, 0.25});
    w.row(std::vector<std::string>{"x", "y"});
    CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), std::invalid_argument);
  }
  CHECK(slurp(dir / "t.csv") == "a,b\n1,0.25\nx,y\n");
}

TEST_CASE("manifest round trip") {
  const fs::path dir = scratch("manifest");
  RunManifest m;
  m.config_hash = hex64(fnv1a64("abc"));
  m.version = library_version();
  m.command = "run";
  m.started = utc_now();
  m.outputs = {"timeseries.csv"};
  m.config_text = "grid.n=32\n";
  write_manifest(dir / "manifest.json", m);
  RunManifest r = read_manifest(dir / "manifest.json");
  CHECK(r.outcome == "running");
  CHECK(r.finished.empty());
  CHECK(r.config_hash == m.config_hash);
  CHECK(r.outputs == m.outputs);
  m.outcome = "completed";
  m.finished = utc_now();
  write_manifest(dir / "manifest.json", m);
  r = read_manifest(dir / "manifest.json");
  CHECK(r.outcome == "completed");
  CHECK(r.finished == m.finished);
  CHECK(r.config_text == m.config_text);
  CHECK_FALSE(fs::exists(dir / "manifest.json.tmp"));
  CHECK(utc_now().size() == 20);
}

TEST_CASE("hashing") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("config parsing") {
  const Config d = parse_config_text("");
  CHECK(d.n == 64);
  CHECK(d.nu0 == 0.1);
  CHECK(d.solver.formulation == Formulation::elsasser);

  const Config c = parse_config_text(
      "[grid]\nn = 32\n[physics]\nnu0 = -0.25\nformulation = original\n[scenario]\nfamily = random_divfree\n"
      "seed = 18446744073709551615\n[sweep]\nepsilons = 0.3, 0.1\n",
      {"time.t_end=0.5", "scenario.epsilon = 0.2"});
  CHECK(c.n == 32);
  CHECK(c.nu0 == -0.25);
  CHECK(c.solver.formulation == Formulation::original);
  CHECK(c.scenario.family == "random_divfree");
  CHECK(c.scenario.seed == 18446744073709551615ULL);
  CHECK(c.sweep.epsilons == std::vector<double>{0.3, 0.1});
  CHECK(c.solver.t_end == 0.5);
  CHECK(c.scenario.epsilon == 0.2);

  CHECK_THROWS_AS(parse_config_text("[grid]\nsize = 32\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[nothing]\nn = 32\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n = 32\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[grid]\nn = 48\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[grid]\nn = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[physics]\nnu0 = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[physics]\nformulation = C\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[scenario]\nfamily = vortex\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[scenario]\nepsilon = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[grid\nn = 32\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("", {"grid.n"}), ConfigError);
  CHECK_THROWS_AS(parse_config_text("", {"grid.nn=3"}), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/oddflow.ini"), ConfigError);
}

TEST_CASE("canonical text is stable and round-trips") {
  const Config a = parse_config_text("[physics]\nnu0=0.3\n[grid]\nn=32\n");
  const Config b = parse_config_text("[grid]\nn=32\n", {"physics.nu0=0.3"});
  CHECK(canonical_text(a) == canonical_text(b));
  CHECK(fnv1a64(canonical_text(a)) == fnv1a64(canonical_text(b)));
  CHECK(canonical_text(a) != canonical_text(parse_config_text("")));

  std::vector<std::string> lines;
  std::istringstream in(canonical_text(a));
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  CHECK(canonical_text(parse_config_text("", lines)) == canonical_text(a));
}
