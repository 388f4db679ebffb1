#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "diamond/config.hpp"
#include "diamond/errors.hpp"
#include "diamond/units.hpp"

using namespace diamond;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

const char* kMinimal = R"({
  "params": {
    "omega_hz": 1e9, "Omega_hz": 2e9,
    "g": {"mag_hz": 1e6, "phase_rad": 0.5},
    "h": {"mag_hz": 1e6},
    "f": {"mag_hz": 1e7},
    "k": {"mag_hz": 1e6},
    "gamma_hz": 3e5,
    "Q1": 2000, "Q2": 1000
  }
})";

std::string with_params(const std::string& extra) {
  std::string s = kMinimal;
  const auto at = s.find("\"Q1\"");
  return s.substr(0, at) + extra + s.substr(at);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto edge = [&] { return EdgeConfig{1e5 + 1e7 * u(rng), -3.0 + 6.0 * u(rng)}; };
  RunConfig c;
  c.params.omega_hz = 1e8 + 1e9 * u(rng);
  c.params.Omega_hz = c.params.omega_hz * (1.5 + u(rng));
  c.params.g = edge();
  c.params.h = edge();
  c.params.f = edge();
  c.params.k = edge();
  c.params.gamma_hz = 1e6 * u(rng);
  if (u(rng) < 0.5) c.params.Q1 = 10.0 + 1e4 * u(rng); else c.params.Gamma1_hz = 1e3 + 1e6 * u(rng);
  if (u(rng) < 0.5) c.params.Q2 = 10.0 + 1e4 * u(rng); else c.params.Gamma2_hz = 1e3 + 1e6 * u(rng);
  c.pumps.a2bar = {10.0 * u(rng), u(rng) < 0.5 ? 0.0 : u(rng)};
  c.pumps.a4bar = {100.0 * u(rng), 0.0};
  c.detuning_hz = -1e6 + 2e6 * u(rng);
  c.extrinsic = u(rng) < 0.5;
  c.convention = u(rng) < 0.5 ? Convention::paper : Convention::standard;
  c.frame = u(rng) < 0.5 ? Frame::rotating : Frame::lab;
  c.db_scale = u(rng) < 0.5 ? DbScale::power : DbScale::paper;
  if (u(rng) < 0.7) {
    SweepConfig s;
    const auto points = 1 + static_cast<std::size_t>(500 * u(rng));
    if (u(rng) < 0.5) {
      s.axes.push_back({Param::detuning, -1e6 * u(rng), 1e6 * u(rng), points, AxisScale::linear});
      s.axes.push_back({Param::gamma, 1e5, 1e5 + 1e7 * u(rng), 7, AxisScale::log});
    } else {
      s.axes.push_back({Param::theta, -kTwoPi * u(rng), kTwoPi * u(rng), points, AxisScale::linear});
      s.window = {true, -2e6, 2e6, 101, u(rng) < 0.5};
    }
    c.sweep = s;
  }
  if (u(rng) < 0.7) {
    OptimizeConfig o;
    o.objective = u(rng) < 0.5 ? Objective::intrinsic_at_w : Objective::extrinsic_peak;
    o.free.push_back({Param::Q1, 10.0, 1e4, true});
    o.free.push_back({Param::a2bar_mag, 0.0, 10.0 * (1.0 + u(rng)), false});
    o.grid_points = 3 + static_cast<std::size_t>(30 * u(rng));
    o.max_evaluations = 100 + static_cast<int>(1000 * u(rng));
    o.tolerance = 1e-8 * (1.0 + u(rng));
    o.window = {false, -1e6, 1e6, 51, true};
    c.optimize = o;
  }
  c.output_dir = "out/run" + std::to_string(rng() % 1000);
  if (u(rng) < 0.5) c.workers = 1 + static_cast<unsigned>(rng() % 8);
  return c;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value) setenv("DIAMOND_WORKERS", value, 1);
    else unsetenv("DIAMOND_WORKERS");
  }
  ~EnvGuard() { unsetenv("DIAMOND_WORKERS"); }
};

}  // namespace

TEST_CASE("minimal config gets defaults and converts to angular units", "[config]") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.params.g.phase_rad == 0.5);
  CHECK(c.params.h.phase_rad == 0.0);
  CHECK(c.convention == Convention::paper);
  CHECK(c.frame == Frame::rotating);
  CHECK(c.db_scale == DbScale::power);
  CHECK(c.output_dir == "out");
  CHECK_FALSE(c.sweep.has_value());
  CHECK_FALSE(c.optimize.has_value());
  CHECK_FALSE(c.workers.has_value());
  const auto d = c.device();
  CHECK(d.omega == Approx(kTwoPi * 1e9).epsilon(1e-15));
  CHECK(d.gamma == Approx(kTwoPi * 3e5).epsilon(1e-15));
  CHECK(d.Gamma1 == Approx(kTwoPi * 1e9 / 2000.0).epsilon(1e-15));
  CHECK(std::abs(d.g) == Approx(kTwoPi * 1e6).epsilon(1e-15));
  CHECK(std::arg(d.g) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pumps accept real and complex forms", "[config]") {
  std::string s = kMinimal;
  s.insert(s.rfind('}'), R"(, "pumps": {"a2bar": 2.5, "a4bar": {"re": 1, "im": -2}})");
  const RunConfig c = parse_config(s);
  CHECK(c.pumps.a2bar == cplx(2.5, 0.0));
  CHECK(c.pumps.a4bar == cplx(1.0, -2.0));
}

TEST_CASE("malformed JSON reports a line number", "[config][errors]") {
  CHECK_THROWS_AS(parse_config(""), ParseError);
  const std::string bad = "{\n  \"params\": {\n    \"omega_hz\": 1e9,,\n  }\n}";
  CHECK_THROWS_WITH(parse_config(bad), ContainsSubstring("line 3"));
}

TEST_CASE("validation errors name the offending field", "[config][errors]") {
  CHECK_THROWS_WITH(parse_config(with_params(R"("Gamma1_hz": 1e5, )")), ContainsSubstring("params.Q1"));
  CHECK_THROWS_AS(parse_config(with_params(R"("Gamma1_hz": 1e5, )")), ValidationError);
  CHECK_THROWS_WITH(parse_config("{}"), ContainsSubstring("params"));
  CHECK_THROWS_WITH(parse_config("[1, 2]"), ContainsSubstring("expected an object"));

  std::string s = kMinimal;
  s.replace(s.find("1e6, \"phase_rad\""), 3, "-1e6");
  CHECK_THROWS_WITH(parse_config(s), ContainsSubstring("params.g.mag_hz"));

  s = kMinimal;
  s.replace(s.find("2e9"), 3, "1e9");
  CHECK_THROWS_WITH(parse_config(s), ContainsSubstring("params.Omega_hz"));

  auto with_root = [](const std::string& extra) {
    std::string t = kMinimal;
    t.insert(t.rfind('}'), ", " + extra);
    return t;
  };
  CHECK_THROWS_WITH(parse_config(with_root(R"("convention": "physics")")), ContainsSubstring("unknown value"));
  CHECK_THROWS_WITH(parse_config(with_root(R"("frame": 3)")), ContainsSubstring("frame"));
  CHECK_THROWS_WITH(parse_config(with_root(R"("workers": 0)")), ContainsSubstring("workers"));
  CHECK_THROWS_WITH(parse_config(with_root(R"("sweep": {"axes": [{"param": "flux", "start": 0, "stop": 1, "points": 3}]})")),
                    ContainsSubstring("sweep.axes[0].param"));
  CHECK_THROWS_AS(parse_config(with_root(R"("sweep": {"axes": []})")), ValidationError);
  CHECK_THROWS_AS(parse_config(with_root(R"("sweep": {"axes": [{"param": "Q1", "start": 0, "stop": 10, "points": 3, "scale": "log"}]})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(with_root(R"("optimize": {"objective": "R", "free": [{"param": "Q1", "lower": 1, "upper": 10}]})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(with_root(R"("optimize": {"objective": "intrinsic_at_w", "free": [{"param": "Q1", "lower": 10, "upper": 1}]})")),
                  ValidationError);
}

TEST_CASE("serialize then parse is the identity", "[config][property]") {
  std::mt19937_64 rng(20240607);
  for (int trial = 0; trial < 200; ++trial) {
    const RunConfig c = random_config(rng);
    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    INFO(text);
    REQUIRE(back == c);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("shipped configs parse", "[config]") {
  const std::filesystem::path dir = std::filesystem::path(DIAMOND_SOURCE_DIR) / "configs";
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().string());
    CHECK_NOTHROW(parse_config(read_file(entry.path())));
    ++count;
  }
  CHECK(count >= 6);
}

TEST_CASE("worker count precedence", "[config]") {
  RunConfig c = parse_config(kMinimal);
  {
    EnvGuard env(nullptr);
    CHECK(resolve_workers(std::nullopt, c) == 1);
  }
  {
    EnvGuard env("6");
    CHECK(resolve_workers(std::nullopt, c) == 6);
    c.workers = 3;
    CHECK(resolve_workers(std::nullopt, c) == 3);
    CHECK(resolve_workers(5u, c) == 5);
  }
  {
    EnvGuard env("lots");
    c.workers.reset();
    CHECK(resolve_workers(std::nullopt, c) == 1);
  }
}
