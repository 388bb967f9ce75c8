#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "relsamp/cli/config.hpp"
#include "relsamp/cli/experiments.hpp"
#include "relsamp/cli/report.hpp"
#include "relsamp/error.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInfeasible = 4;

int exit_code_for(relsamp::ErrorKind kind) {
  switch (kind) {
    case relsamp::ErrorKind::Numerical: return kExitNumerical;
    case relsamp::ErrorKind::Infeasible: return kExitInfeasible;
    default: return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relevant sampling of the discrete short-time Fourier transform"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  int threads = 1;
  bool emit_eigenvectors = false;

  const std::pair<const char*, const char*> verbs[] = {
      {"spectrum", "Eigen-analysis of the localization operator"},
      {"reconstruct", "Least-squares reconstruction from random samples"},
      {"montecarlo", "Empirical failure frequencies against the tail bounds"},
      {"certify", "Sampling-inequality certificate for one random sample set"},
      {"witness", "Non-linearity and equal-samples witnesses"},
  };
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Experiment configuration (INI)")->required();
    sub->add_option("--seed", seed, "Override seeds.master_seed");
    sub->add_option("--out", out_dir, "Output directory (default: relsamp-<verb>)");
    sub->add_option("--threads", threads, "Worker threads for Monte Carlo trials")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--emit-eigenvectors", emit_eigenvectors,
                  "Write psi_1..psi_N as TFRS files (spectrum)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  if (out_dir.empty()) out_dir = "relsamp-" + verb;

  try {
    relsamp::cli::ExperimentConfig config = relsamp::cli::load_config(config_path);
    if (seed) config.master_seed = *seed;
    relsamp::cli::RunOptions options;
    options.out_dir = out_dir;
    options.threads = threads;
    options.emit_eigenvectors = emit_eigenvectors;
    const auto report = relsamp::cli::run_verb(verb, config, options);
    relsamp::cli::write_report(report, out_dir);
    std::cout << relsamp::cli::render_text(report);
    if (report.exit_code != 0) {
      std::cerr << "relsamp: a numerical step did not converge; see " << out_dir
                << "/report.txt\n";
    }
    return report.exit_code;
  } catch (const relsamp::Error& e) {
    std::cerr << "relsamp: " << relsamp::to_string(e.kind()) << " error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "relsamp: error: " << e.what() << "\n";
    return 1;
  }
}
