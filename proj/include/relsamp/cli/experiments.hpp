#pragma once

#include <filesystem>
#include <string>

#include "relsamp/cli/config.hpp"
#include "relsamp/cli/report.hpp"

namespace relsamp::cli {

struct RunOptions {
  // Side files (CSV grids, TFRS signals) are written here; empty disables them.
  std::filesystem::path out_dir;
  int threads = 1;
  bool emit_eigenvectors = false;
};

// Seed streams derived from master_seed. Sample sets use kSampleStream,
// generated functions use kFunctionStream + row index, and Monte Carlo
// campaigns are keyed by r.
inline constexpr std::uint64_t kSampleStream = 0;
inline constexpr std::uint64_t kFunctionStream = 1;
std::uint64_t campaign_seed(std::uint64_t master_seed, std::size_t r);
std::uint64_t covering_seed(std::uint64_t master_seed, std::size_t r);

RunReport run_spectrum(const ExperimentConfig& config, const RunOptions& options = {});
RunReport run_reconstruct(const ExperimentConfig& config, const RunOptions& options = {});
RunReport run_montecarlo(const ExperimentConfig& config, const RunOptions& options = {});
RunReport run_certify(const ExperimentConfig& config, const RunOptions& options = {});
RunReport run_witness(const ExperimentConfig& config, const RunOptions& options = {});

// Dispatch by verb name; unknown verbs raise a Config error.
RunReport run_verb(const std::string& verb, const ExperimentConfig& config,
                   const RunOptions& options = {});

// L rows of L comma-separated values, row m = time, column n = frequency.
void write_grid_csv(const std::filesystem::path& path, const RMatrix& grid);

}  // namespace relsamp::cli
