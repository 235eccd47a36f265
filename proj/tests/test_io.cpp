#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "rcp/config.hpp"
#include "rcp/csvio.hpp"
#include "rcp/presets.hpp"
#include "rcp/pulseio.hpp"

using namespace rcp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "rcp_io_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("csv bodies are deterministic and fixed format") {
  CsvWriter w({"x", "y"});
  w.comment("units: x in MHz");
  w.row({1.0, 0.5});
  w.row({2.0, 1.0 / 3.0});
  CsvWriter w2({"x", "y"});
  w2.comment("units: x in MHz");
  w2.row({1.0, 0.5});
  w2.row({2.0, 1.0 / 3.0});
  CHECK(w.text() == w2.text());
  CHECK(w.body() == "x,y\n1,0.5\n2,0.333333333333\n");
  CHECK(w.text().substr(0, 2) == "# ");
  CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
}

TEST_CASE("csv files are written atomically") {
  TempDir tmp;
  CsvWriter w({"a"});
  w.row({42.0});
  fs::path out = tmp.path / "t.csv";
  w.write(out);
  CHECK(fs::exists(out));
  CHECK_FALSE(fs::exists(tmp.path / "t.csv.tmp"));
  CHECK(slurp(out) == "a\n42\n");
}

TEST_CASE("pulse json round trip, x drive") {
  TempDir tmp;
  XYPulse p = presets::x_pi_detuning();
  p.carrier_phase = 0.25;
  fs::path f = tmp.path / "p.json";
  save_pulse(p, f);
  XYPulse q = load_pulse(f);
  CHECK(q.name == p.name);
  CHECK(q.T() == p.T());
  CHECK(q.x.a == p.x.a);
  CHECK(q.x.phi == p.x.phi);
  CHECK(q.carrier_phase == p.carrier_phase);
  CHECK_FALSE(q.has_y());
}

TEST_CASE("pulse json round trip, x-y drive with drag") {
  XYPulse p = presets::x_pi_universal_2();
  p.drag_coeff = 0.5;
  p.anharmonicity = mhz_to_radns(-220.0);
  XYPulse q = pulse_from_json(pulse_to_json(p));
  CHECK(q.x.a == p.x.a);
  CHECK(q.y.a == p.y.a);
  CHECK(q.y.phi == p.y.phi);
  CHECK(q.drag_coeff == p.drag_coeff);
  CHECK(q.anharmonicity == doctest::Approx(p.anharmonicity).epsilon(1e-12));
  CHECK(q.omega_y(17.0) == doctest::Approx(p.omega_y(17.0)).epsilon(1e-12));
}

TEST_CASE("pulse json rejects malformed input") {
  CHECK_THROWS(pulse_from_json(R"({"kind":"x"})"));
  CHECK_THROWS(pulse_from_json(
      R"({"name":"p","kind":"x","T_ns":-5,"a":[0.1],"phi":[]})"));
  CHECK_THROWS(pulse_from_json(
      R"({"name":"p","kind":"x","T_ns":50,"a":[0.1,0.2],"phi":[0.0,0.0]})"));
  CHECK_THROWS(pulse_from_json(
      R"({"name":"p","kind":"x","T_ns":50,"a":[0.1,0.2],"phi":[0.0],"drag_coeff":0.5})"));
}

TEST_CASE("config accessors and errors") {
  auto cfg = ExperimentConfig::from_string(R"({
    "kind": "sweep1d",
    "seed": 7,
    "grid": {"min_mhz": 0.1, "max_mhz": 1.0, "n": 9, "log": true},
    "pulse": {"preset": "x_pi_detuning"}
  })");
  CHECK(cfg.kind() == "sweep1d");
  CHECK(cfg.seed() == 7);
  CHECK(cfg.number("grid.min_mhz") == doctest::Approx(0.1));
  CHECK(cfg.integer_or("grid.n", 0) == 9);
  CHECK(cfg.number_or("grid.missing", 2.5) == 2.5);
  CHECK(cfg.str("pulse.preset") == "x_pi_detuning");
  CHECK(cfg.str_or("pulse.file", "none") == "none");
  CHECK(cfg.has("grid.log"));
  CHECK_FALSE(cfg.has("grid.lin"));
  CHECK_THROWS_WITH_AS(cfg.number("grid.absent"),
                       "config field 'grid.absent': missing",
                       std::runtime_error);

  CHECK_THROWS(ExperimentConfig::from_string(R"({"kind":"rb"})").seed());
  CHECK_THROWS(ExperimentConfig::from_string("not json"));
}

TEST_CASE("manifest is reproducible and echoes the config") {
  TempDir tmp;
  auto cfg = ExperimentConfig::from_string(
      R"({"kind":"curve","seed":3,"samples":100})");
  write_manifest(cfg, tmp.path, "curve");
  fs::path mf = tmp.path / "curve.manifest.json";
  REQUIRE(fs::exists(mf));
  std::string first = slurp(mf);
  write_manifest(cfg, tmp.path, "curve");
  CHECK(slurp(mf) == first);

  auto j = nlohmann::json::parse(first);
  CHECK(j.at("experiment") == "curve");
  CHECK(j.at("seed") == 3);
  CHECK(j.at("tool_version") == kToolVersion);
  CHECK(j.at("config").at("samples") == 100);
  CHECK(j.contains("config_hash_fnv1a64"));
}
