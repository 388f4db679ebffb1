// Command-line front end: smatrix, sweep, optimize, reproduce, verify.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "diamond/cli/commands.hpp"
#include "diamond/cli/presets.hpp"
#include "diamond/errors.hpp"

namespace {

using namespace diamond;

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open config file " + path);
  std::ostringstream text;
  text << f.rdbuf();
  return parse_config(text.str());
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const SingularMatrix*>(&e)) return "SingularMatrix";
  if (dynamic_cast<const DegenerateTransmission*>(&e)) return "DegenerateTransmission";
  if (dynamic_cast<const UnstableIntegration*>(&e)) return "UnstableIntegration";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const InvalidParams*>(&e)) return "InvalidParams";
  if (dynamic_cast<const UnknownFigure*>(&e)) return "UnknownFigure";
  return "Error";
}

std::optional<unsigned> opt_workers(const CLI::Option* opt, unsigned value) {
  return opt->count() ? std::optional<unsigned>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-mode diamond coupler: scattering, sweeps, optimization and checks"};
  app.require_subcommand(1);

  std::string config_path, out_dir, figure, convention_name;
  double freq_hz = 0.0;
  unsigned workers = 0;
  cli::VerifyOptions verify;

  auto* smatrix = app.add_subcommand("smatrix", "Print the 8x8 S matrix and metrics at one probe frequency");
  smatrix->add_option("--config", config_path, "Config JSON")->required()->check(CLI::ExistingFile);
  auto* freq_opt = smatrix->add_option("--freq-hz", freq_hz, "Absolute probe frequency in Hz");
  smatrix->add_option("--convention", convention_name, "paper or standard")
      ->check(CLI::IsMember({"paper", "standard"}));

  auto* sweep = app.add_subcommand("sweep", "Run the config's sweep section and write CSV + summary");
  sweep->add_option("--config", config_path, "Config JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Output directory (default: config output.dir)");
  auto* sweep_workers = sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* optimize = app.add_subcommand("optimize", "Grid seed plus Nelder-Mead on the config's optimize section");
  optimize->add_option("--config", config_path, "Config JSON")->required()->check(CLI::ExistingFile);
  optimize->add_option("--out", out_dir, "Output directory (default: config output.dir)");
  auto* opt_workers_flag = optimize->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate a figure's data grid and headline checks");
  reproduce->add_option("--figure", figure, "2, 3, 3a, 4, 5, 6, 7, 8, 9, 10, 11 or all")->required();
  reproduce->add_option("--out", out_dir, "Output directory")->default_val("out");
  auto* rep_workers = reproduce->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Time-domain vs frequency-domain and linear-algebra checks");
  verify_cmd->add_option("--config", config_path, "Config JSON")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--tolerance", verify.tolerance, "Relative tolerance for the oracle comparison")
      ->capture_default_str();
  verify_cmd->add_option("--probes", verify.probes, "Number of random probe frequencies")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Probe RNG seed")->capture_default_str();
  verify_cmd->add_flag("--allow-unstable", verify.allow_unstable,
                       "Report UnstableIntegration probes without failing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kExitError;
  }

  try {
    if (smatrix->parsed()) {
      const RunConfig config = load_config(config_path);
      std::optional<Convention> convention;
      if (!convention_name.empty()) convention = convention_name == "paper" ? Convention::paper : Convention::standard;
      return cli::cmd_smatrix(config, freq_opt->count() ? std::optional<double>(freq_hz) : std::nullopt, convention,
                              std::cout);
    }
    if (sweep->parsed()) {
      const RunConfig config = load_config(config_path);
      return cli::cmd_sweep(config, out_dir.empty() ? config.output_dir : out_dir,
                            resolve_workers(opt_workers(sweep_workers, workers), config), std::cout);
    }
    if (optimize->parsed()) {
      const RunConfig config = load_config(config_path);
      return cli::cmd_optimize(config, out_dir.empty() ? config.output_dir : out_dir,
                               resolve_workers(opt_workers(opt_workers_flag, workers), config), std::cout);
    }
    if (reproduce->parsed()) {
      const unsigned n = resolve_workers(opt_workers(rep_workers, workers), RunConfig{});
      if (figure != "all") return cli::cmd_reproduce(figure, out_dir, n, std::cout);
      int status = 0;
      for (const auto& preset : cli::presets())
        status = std::max(status, cli::cmd_reproduce(preset.id, out_dir, n, std::cout));
      return status;
    }
    if (verify_cmd->parsed()) return cli::cmd_verify(load_config(config_path), verify, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return cli::kExitError;
  }
  return 0;
}
