#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "diamond/cli/commands.hpp"
#include "diamond/cli/presets.hpp"
#include "diamond/cli/report.hpp"
#include "diamond/errors.hpp"

using namespace diamond;
using namespace diamond::cli;
using Catch::Approx;
using nlohmann::json;

namespace {

std::filesystem::path source_dir() { return DIAMOND_SOURCE_DIR; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig shipped(const std::string& name) { return parse_config(read_file(source_dir() / "configs" / name)); }

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("diamond_test_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(DIAMOND_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("smatrix on a decoupled device shows the convention difference", "[cli][smatrix]") {
  const RunConfig c = shipped("decoupled.json");
  const json paper = smatrix_report(c, 1e9, Convention::paper);
  const json standard = smatrix_report(c, 1e9, Convention::standard);
  CHECK(paper["S"][0][0][0].get<double>() == Approx(3.0).margin(1e-12));
  CHECK(paper["S"][0][0][1].get<double>() == Approx(0.0).margin(1e-12));
  CHECK(standard["S"][0][0][0].get<double>() == Approx(-1.0).margin(1e-12));
  CHECK(paper["flags"] == "degenerate");
  CHECK(paper["R_linear"].is_null());
  CHECK(paper["S"].size() == 8);
}

TEST_CASE("smatrix on the optimized device", "[cli][smatrix]") {
  const RunConfig c = shipped("optimized.json");
  const json r = smatrix_report(c, std::nullopt, std::nullopt);
  CHECK(r["R_linear"].get<double>() == Approx(3.652).epsilon(1e-3));
  CHECK(r["detuning_hz"].get<double>() == 0.0);
  const json shifted = smatrix_report(c, 1e9 + 52791.94, std::nullopt);
  CHECK(shifted["detuning_hz"].get<double>() == Approx(52791.94).margin(1e-3));
  CHECK(shifted["R_linear"].get<double>() > r["R_linear"].get<double>());
  std::ostringstream out;
  CHECK(cmd_smatrix(c, std::nullopt, std::nullopt, out) == 0);
  CHECK(json::parse(out.str())["R_linear"] == r["R_linear"]);
}

TEST_CASE("numbers are written with 17 significant digits", "[cli][report]") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");
  CHECK(format_number(2.0 / 3.0) == "0.66666666666666663");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  for (double v : {std::acos(-1.0), 1.0 / 3.0, 6.02214076e23, 5e-324})
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
}

TEST_CASE("sweep CSV layout", "[cli][sweep]") {
  RunConfig c = shipped("optimized.json");
  SweepConfig s;
  s.axes.push_back({Param::detuning, -1e6, 1e6, 5, AxisScale::linear});
  c.sweep = s;
  const SweepOutput o = sweep_output(c, 1);
  std::istringstream in(o.csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "detuning_hz,R_linear,R_dB,fwd_gain_dB,bwd_gain_dB,flags");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(rows == 5);
  CHECK(o.summary["records"] == 5);
  CHECK(o.summary["flagged"] == 0);
  CHECK(o.summary.contains("argmax"));
}

TEST_CASE("sweep output is identical for any worker count", "[cli][sweep][determinism]") {
  RunConfig c = shipped("optimized.json");
  SweepConfig s;
  s.axes.push_back({Param::detuning, -2e6, 2e6, 31, AxisScale::linear});
  s.axes.push_back({Param::gamma, 1e6, 1e8, 9, AxisScale::log});
  c.sweep = s;
  const SweepOutput serial = sweep_output(c, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    const SweepOutput parallel = sweep_output(c, w);
    CHECK(parallel.csv == serial.csv);
    CHECK(parallel.summary.dump() == serial.summary.dump());
  }
  const auto dir = scratch("sweep");
  std::ostringstream log;
  CHECK(cmd_sweep(c, dir, 4, log) == 0);
  CHECK(read_file(dir / "sweep.csv") == serial.csv);
  CHECK(json::parse(read_file(dir / "sweep_summary.json")) == serial.summary);
}

TEST_CASE("sweep without axes is rejected", "[cli][errors]") {
  const RunConfig c = shipped("decoupled.json");
  CHECK_THROWS_AS(sweep_output(c, 1), ValidationError);
  CHECK_THROWS_AS(optimize_output(c, 1), ValidationError);
}

TEST_CASE("optimize writes its summary and history", "[cli][optimize]") {
  RunConfig c = shipped("pump_search.json");
  REQUIRE(c.optimize.has_value());
  c.optimize->grid_points = 11;
  const OptimizeOutput a = optimize_output(c, 1);
  const OptimizeOutput b = optimize_output(c, 4);
  CHECK(a.summary.dump() == b.summary.dump());
  CHECK(a.history_csv == b.history_csv);
  CHECK(a.refined.value >= a.seed.value);
  const auto dir = scratch("optimize");
  std::ostringstream log;
  CHECK(cmd_optimize(c, dir, 2, log) == 0);
  CHECK(std::filesystem::exists(dir / "optimize_summary.json"));
  CHECK(read_file(dir / "optimize_history.csv") == a.history_csv);
}

TEST_CASE("figure presets", "[cli][reproduce]") {
  CHECK(presets().size() == 11);
  CHECK_THROWS_AS(find_preset("12"), UnknownFigure);
  CHECK_THROWS_AS(reproduce("1", 1), UnknownFigure);
  for (const auto& p : presets()) {
    const json j = json::parse(p.text);
    INFO(p.id);
    CHECK(j.contains("config"));
    CHECK_NOTHROW(parse_config(j["config"].dump()));
  }
}

TEST_CASE("figure 5 reproduction", "[cli][reproduce]") {
  const Reproduction r = reproduce("5", 2);
  CHECK(r.pass);
  const json& h = r.summary["headlines"];
  CHECK(h["peak_R_dB_paper"].get<double>() == Approx(12.39).margin(0.01));
  CHECK(h["peak_R_dB_power"].get<double>() == Approx(12.39 / 2.0).margin(0.01));
  CHECK(h["peak_at"].get<double>() == Approx(53e3).margin(1e3));
  CHECK(reproduce("5", 1).csv == r.csv);
  const auto dir = scratch("reproduce");
  std::ostringstream log;
  CHECK(cmd_reproduce("5", dir, 1, log) == 0);
  CHECK(read_file(dir / "figure_5.csv") == r.csv);
  CHECK(log.str().find("figure 5: pass") != std::string::npos);
}

TEST_CASE("check operators", "[cli][reproduce]") {
  const json h = {{"x", 10.0}, {"y", -3.0}};
  CHECK(apply_check({{"headline", "x"}, {"op", "near"}, {"target", 10.4}, {"tolerance", 0.5}}, h)["pass"] == true);
  CHECK(apply_check({{"headline", "x"}, {"op", "near"}, {"target", 10.6}, {"tolerance", 0.5}}, h)["pass"] == false);
  CHECK(apply_check({{"headline", "x"}, {"op", "rel"}, {"target", 10.5}, {"tolerance", 0.05}}, h)["pass"] == true);
  CHECK(apply_check({{"headline", "x"}, {"op", "rel"}, {"target", 11.0}, {"tolerance", 0.05}}, h)["pass"] == false);
  CHECK(apply_check({{"headline", "x"}, {"op", "ge"}, {"target", 10.0}}, h)["pass"] == true);
  CHECK(apply_check({{"headline", "y"}, {"op", "le"}, {"target", -3.5}}, h)["pass"] == false);
  CHECK(apply_check({{"headline", "y"}, {"op", "range"}, {"lower", -4.0}, {"upper", 0.0}}, h)["pass"] == true);
  const json checked = apply_check({{"headline", "x"}, {"op", "ge"}, {"target", 1.0}}, h);
  CHECK(checked["measured"] == 10.0);
  CHECK(apply_check({{"headline", "missing"}, {"op", "ge"}, {"target", 1.0}}, h)["pass"] == false);
}

TEST_CASE("verify passes on a decoupled device", "[cli][verify]") {
  VerifyOptions o;
  o.probes = 2;
  o.inversion_trials = 50;
  const json r = verify_report(shipped("decoupled.json"), o);
  CHECK(r["pass"] == true);
  for (const auto& c : r["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("verify reports an unstable operating point", "[cli][verify]") {
  RunConfig c = shipped("optimized.json");
  c.frame = Frame::rotating;
  VerifyOptions o;
  o.probes = 1;
  o.inversion_trials = 10;
  const json strict = verify_report(c, o);
  CHECK(strict["pass"] == false);
  const json& td = strict["checks"][0];
  CHECK(td["unstable_probes"] == 1);
  CHECK(td["probes"][0]["error"].get<std::string>().find("UnstableIntegration") != std::string::npos);
  o.allow_unstable = true;
  CHECK(verify_report(c, o)["pass"] == true);
  std::ostringstream out;
  o.allow_unstable = false;
  CHECK(cmd_verify(c, o, out) == kExitChecksFailed);
}

TEST_CASE("tool exit codes", "[cli][tool]") {
  const auto cfg = (source_dir() / "configs" / "decoupled.json").string();
  CHECK(run_tool("smatrix --config " + cfg) == 0);
  CHECK(run_tool("smatrix --config /nonexistent/config.json") == kExitError);
  CHECK(run_tool("reproduce --figure 99 --out " + scratch("tool").string()) == kExitError);
  CHECK(run_tool("sweep --config " + cfg + " --out " + scratch("tool").string()) == kExitError);
  CHECK(run_tool("--no-such-flag") == kExitError);
  CHECK(run_tool("--help") == 0);
}
