#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "relsamp/locop.hpp"
#include "relsamp/regions.hpp"
#include "relsamp/tfcore.hpp"

namespace relsamp::cli {

inline constexpr int kSchemaVersion = 1;

enum class RegionShape { Disk, Full, Mask };
enum class WindowKind { Gaussian, File };

struct RegionSpec {
  RegionShape shape = RegionShape::Disk;
  TFPoint center{};
  double radius = 0.0;
  std::string mask_file;  // RLE text, relative to the config directory
};

struct WindowSpec {
  WindowKind kind = WindowKind::Gaussian;
  std::string file;  // TFRS signal, normalized on load
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  int L = 0;
  RegionSpec region;
  WindowSpec window;
  double gamma = 0.5;

  // [sampling]
  std::size_t r = 300;
  bool distinct = true;
  int cell_px = 0;  // 0 selects round(sqrt(L))
  double nu = 0.1;

  // [certify]
  double certify_epsilon = 0.0335;
  int batch = 20;

  // [reconstruct]
  std::vector<double> epsilon_targets{0.0335, 1.8252e-9};
  bool include_subspace_function = true;
  bool emit_coefficients = false;

  // [montecarlo]
  int trials = 2000;
  std::vector<double> nu_grid{0.2, 0.3, 0.5};
  std::vector<std::size_t> r_grid{250, 1000, 4000};
  double delta = 0.05;
  bool include_required_r = true;

  // [witness]
  double witness_epsilon = 0.1;
  double witness_eta = 2.0;
  std::size_t witness_r = 0;  // 0 selects L / 4

  std::uint64_t master_seed = 1;

  // [tolerances]
  double cg_tol = 1e-12;
  double eig_residual = 1e-8;

  // Directory used to resolve relative file paths.
  std::filesystem::path base_dir;

  int effective_cell_px() const;
  std::size_t effective_witness_r() const;
};

// Parses the INI text. Every failure is an Error of kind Config whose message
// starts with the offending "section.key".
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig parse_config_string(const std::string& text,
                                     const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// INI text that parses back to the same configuration.
std::string echo_config(const ExperimentConfig& config);

TFRegion build_region(const ExperimentConfig& config);
Window build_window(const ExperimentConfig& config);

const char* to_string(RegionShape shape);
const char* to_string(WindowKind kind);

}  // namespace relsamp::cli
