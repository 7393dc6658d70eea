#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "etreg/runner.hpp"
#include "etreg/toml.hpp"

using namespace etreg;
namespace fs = std::filesystem;

namespace {

const std::string kBundled = std::string(ETREG_SCENARIO_DIR) + "/lorenz_d01.toml";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "etreg_cli_tests";
  fs::create_directories(dir);
  return dir;
}

// A fast-running variant of the bundled scenario with selective overrides.
fs::path write_scenario(const std::string& name, const std::string& needle,
                        const std::string& replacement) {
  std::string text = read_file(kBundled);
  if (!needle.empty()) {
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), replacement);
  }
  const auto t_pos = text.find("t_end = 30.0");
  REQUIRE(t_pos != std::string::npos);
  text.replace(t_pos, std::string("t_end = 30.0").size(), "t_end = 2.0");
  const fs::path path = test_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("toml: value and error handling") {
  const auto table = toml::parse("[a]\nx = 1.5\nflag = true\nname = \"hi\"\narr = [1, [2, 3]]\n",
                                 "inline");
  CHECK(table.at("a.x").as_number() == 1.5);
  CHECK(table.at("a.flag").as_bool());
  CHECK(table.at("a.name").as_string() == "hi");
  CHECK(table.at("a.arr").as_array()[1].as_array()[0].as_number() == 2.0);

  CHECK_THROWS_AS(toml::parse("x = \n", "inline"), ParseError);
  CHECK_THROWS_AS(toml::parse("x = 1\nx = 2\n", "inline"), ParseError);
  try {
    toml::parse("ok = 1\nbad =\n", "somefile");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    // Line/field context for diagnostics.
    CHECK(std::string(e.what()).find("somefile:2") != std::string::npos);
  }
}

TEST_CASE("load_scenario: bundled benchmark file carries the published data") {
  const Scenario sc = load_scenario(kBundled);
  CHECK(sc.plant_kind == "lorenz");
  CHECK(sc.w.size() == 7);
  CHECK(sc.w[0] == 0.5);
  CHECK(sc.w[6] == 0.4);
  CHECK(sc.lambda[0] == 2.0);
  CHECK(sc.sigma == 0.4);
  CHECK(sc.delta == 0.1);
  CHECK(sc.varrho.size() == 4);
  CHECK(sc.varrho[0] == -9.0);
  CHECK(sc.varrho[2] == -10.0);
  CHECK(sc.init.v0[0] == -0.34);
  CHECK(sc.init.xi_hat0[1] == -5.96);
  CHECK(sc.init.eta0[2] == -1.49);
  CHECK(sc.t_end == 30.0);
  CHECK(sc.h == 1e-4);
}

TEST_CASE("load_scenario: validation names the violated constraint") {
  const auto expect_message = [](const fs::path& path, const std::string& fragment) {
    try {
      load_scenario(path.string());
      FAIL("expected ValidationError for ", fragment);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };

  expect_message(write_scenario("bad_tol.toml", "event_tol = 1e-11", "event_tol = 1e-3"),
                 "event_tol");
  expect_message(write_scenario("bad_catalog.toml", "catalog = \"lorenz\"",
                                "catalog = \"unknown\""),
                 "catalog");
  expect_message(write_scenario("bad_sigma.toml", "sigma = 0.4", "sigma = 1.4"), "sigma");
  expect_message(write_scenario("bad_dim.toml", "x0 = [0.5, 0.3]", "x0 = [0.5]"), "x0");
  expect_message(write_scenario("bad_key.toml", "report_stride = 10",
                                "report_stride = 10\ntypo_key = 1"),
                 "typo_key");
  expect_message(write_scenario("bad_pi.toml", "pi = \"lorenz\"", "pi = \"cubic\""), "pi");
}

TEST_CASE("cmd_simulate: artifacts, schemas, and determinism") {
  const fs::path scenario = write_scenario("short.toml", "", "");
  const fs::path out1 = test_dir() / "run1";
  const fs::path out2 = test_dir() / "run2";
  fs::remove_all(out1);
  fs::remove_all(out2);

  std::ostringstream log1, err1, log2, err2;
  CHECK(cmd_simulate(scenario.string(), out1.string(), log1, err1) == 0);
  CHECK(cmd_simulate(scenario.string(), out2.string(), log2, err2) == 0);
  CHECK(err1.str().empty());

  const std::string trace = read_file(out1 / "trace.csv");
  CHECK(trace.rfind("t,e,y,y0,u,v1,v2,z1,z2,x1,x2,eta1,eta2,eta3,eta4,xihat1,xihat2\n", 0) == 0);
  const std::string triggers = read_file(out1 / "triggers.csv");
  CHECK(triggers.rfind("k,t_k,dwell\n", 0) == 0);
  const std::string metrics = read_file(out1 / "metrics.csv");
  CHECK(metrics.rfind("delta,sigma,trigger_count,tail_sup_error,min_dwell,mean_dwell,status\n",
                      0) == 0);
  CHECK(metrics.find("Completed") != std::string::npos);

  // Byte-identical replays.
  CHECK(trace == read_file(out2 / "trace.csv"));
  CHECK(triggers == read_file(out2 / "triggers.csv"));
  CHECK(metrics == read_file(out2 / "metrics.csv"));
}

TEST_CASE("cmd_simulate: bundled benchmark completes with the published count range") {
  const fs::path out = test_dir() / "bundled_out";
  fs::remove_all(out);
  std::ostringstream log, err;
  REQUIRE(cmd_simulate(kBundled, out.string(), log, err) == 0);

  // metrics.csv: delta,sigma,trigger_count,...: pick out the count field.
  const std::string metrics = read_file(out / "metrics.csv");
  std::istringstream lines(metrics);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  std::size_t first = row.find(','), second = row.find(',', first + 1);
  const std::size_t third = row.find(',', second + 1);
  const long count = std::stol(row.substr(second + 1, third - second - 1));
  CHECK(count >= 217);
  CHECK(count <= 325);
  CHECK(row.find("Completed") != std::string::npos);
}

TEST_CASE("cmd_simulate: trigger budget exhaustion is a named nonzero exit") {
  const fs::path scenario = write_scenario("budget.toml", "max_triggers = 1000000",
                                           "max_triggers = 2");
  std::ostringstream log, err;
  const int rc = cmd_simulate(scenario.string(), (test_dir() / "budget_out").string(), log, err);
  CHECK(rc == 2);
  CHECK(err.str().find("MaxTriggers") != std::string::npos);
}

TEST_CASE("cmd_simulate: delta = 0 with a tiny budget trips MaxTriggers") {
  const fs::path scenario = write_scenario("delta0.toml", "delta = 0.1", "delta = 0.0");
  std::string text = read_file(scenario);
  const auto pos = text.find("max_triggers = 1000000");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, std::string("max_triggers = 1000000").size(), "max_triggers = 5");
  {
    std::ofstream out(scenario, std::ios::binary);
    out << text;
  }
  std::ostringstream log, err;
  const int rc = cmd_simulate(scenario.string(), (test_dir() / "delta0_out").string(), log, err);
  CHECK(rc == 2);
  CHECK(err.str().find("MaxTriggers") != std::string::npos);
}

TEST_CASE("cmd_sweep: rows match standalone runs and keep the given order") {
  const fs::path scenario = write_scenario("sweep.toml", "", "");
  const fs::path sweep_out = test_dir() / "sweep_out";
  const fs::path solo_out = test_dir() / "solo_out";
  fs::remove_all(sweep_out);
  fs::remove_all(solo_out);

  std::ostringstream log, err;
  CHECK(cmd_sweep(scenario.string(), {0.1, 0.01}, 2, sweep_out.string(), log, err) == 0);
  const std::string sweep = read_file(sweep_out / "sweep.csv");
  CHECK(sweep.rfind("delta,sigma,trigger_count,tail_sup_error,min_dwell\n", 0) == 0);

  std::istringstream lines(sweep);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(row1.rfind("0.1,0.4,", 0) == 0);
  CHECK(row2.rfind("0.01,0.4,", 0) == 0);

  // The delta = 0.1 sweep row equals the standalone run's metrics.
  std::ostringstream log2, err2;
  CHECK(cmd_simulate(scenario.string(), solo_out.string(), log2, err2) == 0);
  const std::string metrics = read_file(solo_out / "metrics.csv");
  std::istringstream mlines(metrics);
  std::string mheader, mrow;
  std::getline(mlines, mheader);
  std::getline(mlines, mrow);
  // metrics row: delta,sigma,count,tail,min_dwell,mean_dwell,status; the
  // first five fields must match the sweep row byte for byte.
  std::size_t commas = 0, cut = 0;
  for (std::size_t i = 0; i < mrow.size() && commas < 5; ++i) {
    if (mrow[i] == ',') ++commas;
    cut = i;
  }
  CHECK(row1 == mrow.substr(0, cut));
}

TEST_CASE("resolve_out_dir: flag beats scenario, scenario beats ETREG_OUT") {
  Scenario sc = load_scenario(kBundled);
  REQUIRE(sc.out_dir.empty());

  setenv("ETREG_OUT", "/tmp/etreg_env_dir", 1);
  CHECK(resolve_out_dir(sc, "") == fs::path("/tmp/etreg_env_dir"));
  CHECK(resolve_out_dir(sc, "explicit") == fs::path("explicit"));
  sc.out_dir = "from_scenario";
  CHECK(resolve_out_dir(sc, "") == fs::path("from_scenario"));
  unsetenv("ETREG_OUT");
  sc.out_dir.clear();
  CHECK(resolve_out_dir(sc, "") == fs::path("."));
}

TEST_CASE("cmd_verify: benchmark design passes and prints Psi") {
  std::ostringstream log, err;
  const int rc = cmd_verify(kBundled, log, err);
  CHECK(rc == 0);
  const std::string report = log.str();
  CHECK(report.find("psi = [-5") != std::string::npos);
  CHECK(report.find("12, 3, 6]") != std::string::npos);
  CHECK(report.find("RESULT: PASS") != std::string::npos);
  CHECK(report.find("FAIL") == std::string::npos);
}

TEST_CASE("cmd_verify: zero observer gains fail naming A_o") {
  const fs::path scenario =
      write_scenario("bad_obs.toml", "lambda = [2.0, 2.0]", "lambda = [0.0, 0.0]");
  std::ostringstream log, err;
  const int rc = cmd_verify(scenario.string(), log, err);
  CHECK(rc == 1);
  CHECK(log.str().find("A_o") != std::string::npos);
  CHECK(err.str().find("A_o") != std::string::npos);
}

TEST_CASE("cmd_verify: zero N fails with controllability rank 0") {
  const fs::path scenario = write_scenario("bad_n.toml", "N = [0.0, 0.0, 0.0, 1.0]",
                                           "N = [0.0, 0.0, 0.0, 0.0]");
  std::ostringstream log, err;
  const int rc = cmd_verify(scenario.string(), log, err);
  CHECK(rc == 1);
  CHECK(log.str().find("controllability_rank: 0 of 4") != std::string::npos);
}
