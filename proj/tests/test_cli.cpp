#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cli/experiments.hpp"
#include "cli/run_config.hpp"
#include "cli/settings.hpp"
#include "qlga/model.hpp"

using namespace qlga;
using namespace qlga::cli;

namespace {

Settings from_text(const std::string& text) {
  std::istringstream in(text);
  return read_settings(in, "test.cfg");
}

std::string run_text(const RunConfig& cfg, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = run_and_write(cfg, out, err);
  return code == Ok ? out.str() : err.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  return lines;
}

} // namespace

TEST_CASE("angle syntax") {
  CHECK(parse_angle("0.25") == 0.25);
  CHECK(parse_angle("-1e-1") == -0.1);
  CHECK(parse_angle("pi") == pi);
  CHECK(parse_angle("pi/12") == pi / 12);
  CHECK(parse_angle("-pi/12") == -pi / 12);
  CHECK(parse_angle("7pi/24") == 7 * pi / 24);
  CHECK(parse_angle("2pi") == 2 * pi);
  CHECK(parse_angle(" pi/8 ") == pi / 8);
  CHECK_THROWS_AS(parse_angle("pi/0"), ConfigError);
  CHECK_THROWS_AS(parse_angle("pi/x"), ConfigError);
  CHECK_THROWS_AS(parse_angle("nan"), ConfigError);
  CHECK_THROWS_AS(parse_angle("inf"), ConfigError);
  CHECK_THROWS_AS(parse_angle(""), ConfigError);
  CHECK_THROWS_AS(parse_angle("1.5pi"), ConfigError);
}

TEST_CASE("pair phase syntax") {
  CHECK(parse_pair_phase("1") == complex(1.0));
  CHECK(parse_pair_phase("-1") == complex(-1.0));
  CHECK(parse_pair_phase("i") == I);
  CHECK(parse_pair_phase("-i") == -I);
  CHECK(std::abs(parse_pair_phase("e^ipi/7") - std::polar(1.0, pi / 7)) < 1e-16);
  CHECK_THROWS_AS(parse_pair_phase("2"), ConfigError);
}

TEST_CASE("config file parsing reports lines") {
  const Settings s = from_text("# comment\nexperiment = planewave\n\ntheta = pi/12  # trailing\nN=32\n");
  CHECK(s.get("theta") == "pi/12");
  CHECK(s.origin("N") == "test.cfg:5");
  CHECK_THROWS_WITH_AS(from_text("theta pi\n"), "test.cfg:1: expected 'key = value'", ConfigError);
  CHECK_THROWS_WITH_AS(from_text("N = 8\nN = 10\n"), "test.cfg:2: 'N' already set at test.cfg:1", ConfigError);
}

TEST_CASE("config validation errors point at the offending line") {
  CHECK_THROWS_WITH_AS(make_run_config(from_text("experiment = planewave\nN = 31\n")), "test.cfg:2: N: must be even",
                       ConfigError);
  CHECK_THROWS_WITH_AS(make_run_config(from_text("experiment = planewave\n\ntheta = pi/q\n")),
                       doctest::Contains("test.cfg:3: theta:"), ConfigError);
  CHECK_THROWS_WITH_AS(make_run_config(from_text("experiment = step\ngrid = 4\n")),
                       "test.cfg:2: unknown key 'grid' for step", ConfigError);
  CHECK_THROWS_WITH_AS(make_run_config(from_text("experiment = evolve\nprecision = 18\n")),
                       doctest::Contains("test.cfg:2: precision: must lie in [6, 17]"), ConfigError);
  CHECK_THROWS_WITH_AS(make_run_config(from_text("experiment = dance\n")), doctest::Contains("test.cfg:1:"),
                       ConfigError);
  CHECK_THROWS_AS(make_run_config(from_text("N = 8\n")), ConfigError);
}

TEST_CASE("defaults are echoed in a fixed order") {
  const RunConfig cfg = make_run_config("planewave", Settings{});
  REQUIRE(cfg.echo.size() >= 4);
  CHECK(cfg.echo[0].first == "experiment");
  CHECK(cfg.echo[1] == std::pair<std::string, std::string>{"theta", "pi/12"});
  CHECK(header_line(cfg).rfind("# qlga v", 0) == 0);
  CHECK(header_line(cfg).find("| experiment=planewave theta=pi/12 f=1") != std::string::npos);
}

TEST_CASE("planewave csv has the documented shape") {
  Settings s;
  s.set("theta", "pi/12", "--theta");
  s.set("k", "pi/16", "--k");
  s.set("N", "32", "--N");
  s.set("steps", "8", "--steps");
  int code = -1;
  const auto lines = lines_of(run_text(make_run_config("planewave", s), code));
  REQUIRE(code == Ok);
  CHECK(lines[0].rfind("# qlga v0.1.0 | experiment=planewave", 0) == 0);
  CHECK(lines[1] == "t,x,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus");
  CHECK(lines.size() == 2 + 9 * 32);
  CHECK(lines[2].rfind("0,0,", 0) == 0);
}

TEST_CASE("planewave output matches the phase evolution") {
  Settings s;
  s.set("format", "json", "--format");
  int code = -1;
  const std::string out = run_text(make_run_config("planewave", s), code);
  REQUIRE(code == Ok);
  const auto doc = Json::parse(out);
  CHECK(doc.contains("config"));
  CHECK(doc.contains("results"));
  CHECK(doc["checks"]["phase_evolution_error"]["pass"] == true);
  CHECK(doc["results"]["omega"].is_string());
}

TEST_CASE("output is byte identical across runs") {
  Settings s;
  s.set("initial", "random", "--initial");
  s.set("seed", "42", "--seed");
  s.set("N", "8", "--N");
  int c1 = -1;
  int c2 = -1;
  const RunConfig cfg = make_run_config("evolve", s);
  CHECK(run_text(cfg, c1) == run_text(cfg, c2));
  Settings t;
  t.set("initial", "random", "--initial");
  t.set("N", "6", "--N");
  const RunConfig two = make_run_config("two-evolve", t);
  CHECK(run_text(two, c1) == run_text(two, c2));
}

TEST_CASE("klein sweep flips regime at pi/12 and pi/4") {
  Settings s;
  s.set("theta", "pi/12", "--theta");
  s.set("omega", "pi/6", "--omega");
  s.set("phi-from", "0", "--phi-from");
  s.set("phi-to", "pi/2", "--phi-to");
  s.set("grid", "97", "--grid");
  int code = -1;
  const auto lines = lines_of(run_text(make_run_config("klein-sweep", s), code));
  REQUIRE(code == Ok);
  CHECK(lines[1] == "phi,regime,re_kprime,im_kprime,abs_A_sq,abs_B_sq");
  REQUIRE(lines.size() == 2 + 97);
  std::vector<std::string> regimes;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto first = lines[i].find(',');
    regimes.push_back(lines[i].substr(first + 1, lines[i].find(',', first + 1) - first - 1));
  }
  // phi_i = i pi / 192: pi/12 at i = 16 and pi/4 at i = 48
  CHECK(regimes[15] == "transmitting");
  CHECK(regimes[16] == "critical");
  CHECK(regimes[17] == "evanescent");
  CHECK(regimes[47] == "evanescent");
  CHECK(regimes[48] == "critical");
  CHECK(regimes[49] == "klein");
  CHECK(regimes[96] == "klein");
}

TEST_CASE("bethe antisymmetric report") {
  Settings s;
  s.set("theta", "pi/12", "--theta");
  s.set("f", "1", "--f");
  s.set("k1", "pi/8", "--k1");
  s.set("k2", "pi/16", "--k2");
  s.set("variant", "antisym", "--variant");
  int code = -1;
  const auto doc = Json::parse(run_text(make_run_config("bethe", s), code));
  REQUIRE(code == Ok);
  CHECK(doc["results"]["variant"] == "antisym");
  CHECK(doc["checks"]["abs_A_is_one"]["pass"] == true);
  CHECK(doc["checks"]["eigen_residual"]["pass"] == true);
  CHECK(std::stod(doc["results"]["re_A"].get<std::string>()) == doctest::Approx(-1.0));
}

TEST_CASE("every experiment runs with defaults and passes its checks") {
  for (const char* name : {"evolve", "planewave", "spectrum", "step", "klein-sweep", "bethe", "two-evolve"}) {
    Settings s;
    s.set("format", "json", "--format");
    int code = -1;
    const std::string out = run_text(make_run_config(name, s), code);
    REQUIRE_MESSAGE(code == Ok, name);
    const auto doc = Json::parse(out);
    for (const auto& [check, value] : doc["checks"].items()) {
      CHECK_MESSAGE(value["pass"] == true, name, " ", check);
    }
  }
}

TEST_CASE("two-evolve slices") {
  Settings s;
  s.set("N", "6", "--N");
  s.set("steps", "1", "--steps");
  s.set("slice", "x2=3", "--slice");
  int code = -1;
  const auto lines = lines_of(run_text(make_run_config("two-evolve", s), code));
  REQUIRE(code == Ok);
  CHECK(lines[1] == "t,x1,alpha1,x2,alpha2,re,im");
  CHECK(lines.size() == 2 + 2 * (4 * 6 - 2));
  Settings bad;
  bad.set("slice", "x2=99", "--slice");
  CHECK_THROWS_AS(make_run_config("two-evolve", bad), ConfigError);
}

TEST_CASE("library errors map to exit codes") {
  int code = -1;
  Settings flat;
  flat.set("theta", "pi/2", "--theta");
  const std::string msg = run_text(make_run_config("step", flat), code);
  CHECK(code == NumericalGuard);
  CHECK(msg.find("numerical guard") != std::string::npos);

  Settings gap;
  gap.set("omega", "0.1", "--omega");
  run_text(make_run_config("step", gap), code);
  CHECK(code == BadConfig);

  Settings degenerate;
  degenerate.set("k1", "pi/8", "--k1");
  degenerate.set("k2", "pi/8", "--k2");
  run_text(make_run_config("bethe", degenerate), code);
  CHECK(code == NumericalGuard);

  Settings off_grid;
  off_grid.set("k", "0.1", "--k");
  run_text(make_run_config("planewave", off_grid), code);
  CHECK(code == BadConfig);
}
