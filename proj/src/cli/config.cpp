#include "relsamp/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "relsamp/cli/signal_io.hpp"
#include "relsamp/error.hpp"

namespace relsamp::cli {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kSections{"grid",   "region",     "window",     "spectrum",
                                      "sampling", "certify",  "reconstruct", "montecarlo",
                                      "witness", "seeds",     "tolerances"};

[[noreturn]] void fail(const std::string& field, const std::string& problem) {
  throw Error(ErrorKind::Config, "config: " + field + ": " + problem);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& field, const std::string& text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    std::string item = trim(std::string_view(text).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item.empty()) fail(field, "empty list element in '" + text + "'");
    items.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

template <typename T>
T parse_number(const std::string& field, const std::string& text, const char* expected) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (!text.empty() && text[0] == '+') ++begin;
  std::from_chars_result res;
  if constexpr (std::is_floating_point_v<T>) {
    res = std::from_chars(begin, end, value, std::chars_format::general);
  } else {
    res = std::from_chars(begin, end, value);
  }
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    fail(field, std::string("expected ") + expected + ", got '" + text + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) fail(field, "value must be finite");
  }
  return value;
}

bool parse_bool(const std::string& field, const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  fail(field, "expected a boolean, got '" + text + "'");
}

// Flattens the parsed tree to "section.key" -> value and tracks which entries
// were consumed so leftovers can be reported as unknown keys.
class Reader {
 public:
  explicit Reader(const pt::ptree& root) {
    for (const auto& [name, node] : root) {
      if (node.empty() && !kSections.contains(name)) {
        values_.emplace(name, trim(node.data()));
        continue;
      }
      if (!kSections.contains(name)) fail("[" + name + "]", "unknown section");
      for (const auto& [key, value] : node) {
        if (!value.empty()) fail(name + "." + key, "nested keys are not supported");
        values_.emplace(name + "." + key, trim(value.data()));
      }
    }
  }

  std::optional<std::string> take(const std::string& field) {
    const auto it = values_.find(field);
    if (it == values_.end()) return std::nullopt;
    std::string value = it->second;
    values_.erase(it);
    return value;
  }

  std::string require(const std::string& field) {
    auto value = take(field);
    if (!value) fail(field, "missing required key");
    return *value;
  }

  void finish() const {
    if (!values_.empty()) fail(values_.begin()->first, "unknown key");
  }

 private:
  std::map<std::string, std::string> values_;
};

void read_int(Reader& rd, const std::string& field, int& out, int min_value) {
  if (auto v = rd.take(field)) out = parse_number<int>(field, *v, "an integer");
  if (out < min_value) fail(field, "must be at least " + std::to_string(min_value));
}

void read_size(Reader& rd, const std::string& field, std::size_t& out, std::size_t min_value) {
  if (auto v = rd.take(field)) out = parse_number<std::size_t>(field, *v, "a non-negative integer");
  if (out < min_value) fail(field, "must be at least " + std::to_string(min_value));
}

void read_double(Reader& rd, const std::string& field, double& out) {
  if (auto v = rd.take(field)) out = parse_number<double>(field, *v, "a real number");
}

void read_bool(Reader& rd, const std::string& field, bool& out) {
  if (auto v = rd.take(field)) out = parse_bool(field, *v);
}

void require_open_unit(const std::string& field, double v) {
  if (!(v > 0.0 && v < 1.0)) fail(field, "must lie in (0, 1)");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::filesystem::path resolve(const ExperimentConfig& cfg, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() || cfg.base_dir.empty() ? p : cfg.base_dir / p;
}

}  // namespace

const char* to_string(RegionShape shape) {
  switch (shape) {
    case RegionShape::Disk: return "disk";
    case RegionShape::Full: return "full";
    case RegionShape::Mask: return "mask";
  }
  return "?";
}

const char* to_string(WindowKind kind) {
  return kind == WindowKind::Gaussian ? "gaussian" : "file";
}

int ExperimentConfig::effective_cell_px() const {
  return cell_px > 0 ? cell_px : default_cell_size(L);
}

std::size_t ExperimentConfig::effective_witness_r() const {
  return witness_r > 0 ? witness_r : static_cast<std::size_t>(std::max(1, L / 4));
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config,
                "config: line " + std::to_string(e.line()) + ": " + e.message());
  }
  Reader rd(tree);
  ExperimentConfig cfg;
  cfg.base_dir = base_dir;

  cfg.schema_version = parse_number<int>("schema_version", rd.require("schema_version"),
                                         "an integer");
  if (cfg.schema_version != kSchemaVersion) {
    fail("schema_version", "unsupported version " + std::to_string(cfg.schema_version) +
                               " (expected " + std::to_string(kSchemaVersion) + ")");
  }

  cfg.L = parse_number<int>("grid.L", rd.require("grid.L"), "an integer");
  if (cfg.L < 4) fail("grid.L", "must be at least 4");

  const std::string shape = rd.take("region.shape").value_or("disk");
  if (shape == "disk") {
    cfg.region.shape = RegionShape::Disk;
    cfg.region.center = {cfg.L / 2, cfg.L / 2};
    read_int(rd, "region.center_m", cfg.region.center.m, 0);
    read_int(rd, "region.center_n", cfg.region.center.n, 0);
    if (cfg.region.center.m >= cfg.L) fail("region.center_m", "must be below grid.L");
    if (cfg.region.center.n >= cfg.L) fail("region.center_n", "must be below grid.L");
    cfg.region.radius =
        parse_number<double>("region.radius", rd.require("region.radius"), "a real number");
    if (!(cfg.region.radius > 0.0)) fail("region.radius", "must be positive");
    if (!(2.0 * cfg.region.radius < cfg.L)) fail("region.radius", "must be below grid.L / 2");
  } else if (shape == "full") {
    cfg.region.shape = RegionShape::Full;
  } else if (shape == "mask") {
    cfg.region.shape = RegionShape::Mask;
    cfg.region.mask_file = rd.require("region.mask_file");
    if (cfg.region.mask_file.empty()) fail("region.mask_file", "must not be empty");
  } else {
    fail("region.shape", "expected disk, full or mask, got '" + shape + "'");
  }

  const std::string kind = rd.take("window.kind").value_or("gaussian");
  if (kind == "gaussian") {
    cfg.window.kind = WindowKind::Gaussian;
  } else if (kind == "file") {
    cfg.window.kind = WindowKind::File;
    cfg.window.file = rd.require("window.file");
    if (cfg.window.file.empty()) fail("window.file", "must not be empty");
  } else {
    fail("window.kind", "expected gaussian or file, got '" + kind + "'");
  }

  read_double(rd, "spectrum.gamma", cfg.gamma);
  require_open_unit("spectrum.gamma", cfg.gamma);

  read_size(rd, "sampling.r", cfg.r, 1);
  read_bool(rd, "sampling.distinct", cfg.distinct);
  read_int(rd, "sampling.cell_px", cfg.cell_px, 0);
  read_double(rd, "sampling.nu", cfg.nu);
  if (cfg.nu < 0.0) fail("sampling.nu", "must be non-negative");

  read_double(rd, "certify.epsilon", cfg.certify_epsilon);
  require_open_unit("certify.epsilon", cfg.certify_epsilon);
  if (!(cfg.certify_epsilon < 1.0 - cfg.gamma)) {
    fail("certify.epsilon", "must be below 1 - spectrum.gamma");
  }
  read_int(rd, "certify.batch", cfg.batch, 1);

  if (auto v = rd.take("reconstruct.epsilon_targets")) {
    cfg.epsilon_targets.clear();
    if (!trim(*v).empty()) {
      for (const auto& item : split_list("reconstruct.epsilon_targets", *v)) {
        const double e = parse_number<double>("reconstruct.epsilon_targets", item, "a real number");
        require_open_unit("reconstruct.epsilon_targets", e);
        cfg.epsilon_targets.push_back(e);
      }
    }
  }
  read_bool(rd, "reconstruct.include_subspace_function", cfg.include_subspace_function);
  read_bool(rd, "reconstruct.emit_coefficients", cfg.emit_coefficients);

  read_int(rd, "montecarlo.trials", cfg.trials, 1);
  if (auto v = rd.take("montecarlo.nu_grid")) {
    cfg.nu_grid.clear();
    for (const auto& item : split_list("montecarlo.nu_grid", *v)) {
      const double nu = parse_number<double>("montecarlo.nu_grid", item, "a real number");
      if (nu < 0.0) fail("montecarlo.nu_grid", "entries must be non-negative");
      cfg.nu_grid.push_back(nu);
    }
  }
  if (auto v = rd.take("montecarlo.r_grid")) {
    cfg.r_grid.clear();
    for (const auto& item : split_list("montecarlo.r_grid", *v)) {
      const auto r = parse_number<std::size_t>("montecarlo.r_grid", item, "a positive integer");
      if (r == 0) fail("montecarlo.r_grid", "entries must be at least 1");
      cfg.r_grid.push_back(r);
    }
  }
  read_double(rd, "montecarlo.delta", cfg.delta);
  require_open_unit("montecarlo.delta", cfg.delta);
  read_bool(rd, "montecarlo.include_required_r", cfg.include_required_r);

  read_double(rd, "witness.epsilon", cfg.witness_epsilon);
  require_open_unit("witness.epsilon", cfg.witness_epsilon);
  read_double(rd, "witness.eta", cfg.witness_eta);
  if (!(cfg.witness_eta > 1.0 && cfg.witness_eta * cfg.witness_epsilon < 1.0)) {
    fail("witness.eta", "must satisfy 1 < eta < 1 / witness.epsilon");
  }
  read_size(rd, "witness.r", cfg.witness_r, 0);

  if (auto v = rd.take("seeds.master_seed")) {
    cfg.master_seed = parse_number<std::uint64_t>("seeds.master_seed", *v, "an unsigned integer");
  }

  read_double(rd, "tolerances.cg_tol", cfg.cg_tol);
  if (!(cfg.cg_tol > 0.0)) fail("tolerances.cg_tol", "must be positive");
  read_double(rd, "tolerances.eig_residual", cfg.eig_residual);
  if (!(cfg.eig_residual > 0.0)) fail("tolerances.eig_residual", "must be positive");

  rd.finish();
  return cfg;
}

ExperimentConfig parse_config_string(const std::string& text,
                                     const std::filesystem::path& base_dir) {
  std::istringstream in(text);
  return parse_config(in, base_dir);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "config: cannot open " + path.string());
  return parse_config(in, path.parent_path());
}

std::string echo_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  const auto list = [](const auto& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) s += ", ";
      if constexpr (std::is_floating_point_v<std::decay_t<decltype(values[i])>>) {
        s += format_double(values[i]);
      } else {
        s += std::to_string(values[i]);
      }
    }
    return s;
  };
  const auto b = [](bool v) { return v ? "true" : "false"; };

  out << "schema_version = " << cfg.schema_version << "\n\n";
  out << "[grid]\nL = " << cfg.L << "\n\n";
  out << "[region]\nshape = " << to_string(cfg.region.shape) << "\n";
  if (cfg.region.shape == RegionShape::Disk) {
    out << "center_m = " << cfg.region.center.m << "\ncenter_n = " << cfg.region.center.n
        << "\nradius = " << format_double(cfg.region.radius) << "\n";
  } else if (cfg.region.shape == RegionShape::Mask) {
    out << "mask_file = " << resolve(cfg, cfg.region.mask_file).string() << "\n";
  }
  out << "\n[window]\nkind = " << to_string(cfg.window.kind) << "\n";
  if (cfg.window.kind == WindowKind::File) {
    out << "file = " << resolve(cfg, cfg.window.file).string() << "\n";
  }
  out << "\n[spectrum]\ngamma = " << format_double(cfg.gamma) << "\n\n";
  out << "[sampling]\nr = " << cfg.r << "\ndistinct = " << b(cfg.distinct)
      << "\ncell_px = " << cfg.cell_px << "\nnu = " << format_double(cfg.nu) << "\n\n";
  out << "[certify]\nepsilon = " << format_double(cfg.certify_epsilon)
      << "\nbatch = " << cfg.batch << "\n\n";
  out << "[reconstruct]\nepsilon_targets = " << list(cfg.epsilon_targets)
      << "\ninclude_subspace_function = " << b(cfg.include_subspace_function)
      << "\nemit_coefficients = " << b(cfg.emit_coefficients) << "\n\n";
  out << "[montecarlo]\ntrials = " << cfg.trials << "\nnu_grid = " << list(cfg.nu_grid)
      << "\nr_grid = " << list(cfg.r_grid) << "\ndelta = " << format_double(cfg.delta)
      << "\ninclude_required_r = " << b(cfg.include_required_r) << "\n\n";
  out << "[witness]\nepsilon = " << format_double(cfg.witness_epsilon)
      << "\neta = " << format_double(cfg.witness_eta) << "\nr = " << cfg.witness_r << "\n\n";
  out << "[seeds]\nmaster_seed = " << cfg.master_seed << "\n\n";
  out << "[tolerances]\ncg_tol = " << format_double(cfg.cg_tol)
      << "\neig_residual = " << format_double(cfg.eig_residual) << "\n";
  return out.str();
}

TFRegion build_region(const ExperimentConfig& cfg) {
  switch (cfg.region.shape) {
    case RegionShape::Full:
      return TFRegion::full(cfg.L);
    case RegionShape::Disk:
      try {
        return disk_region(cfg.L, cfg.region.center, cfg.region.radius);
      } catch (const Error& e) {
        fail("region", e.what());
      }
    case RegionShape::Mask: {
      const auto path = resolve(cfg, cfg.region.mask_file);
      std::ifstream in(path);
      if (!in) fail("region.mask_file", "cannot open " + path.string());
      std::stringstream text;
      text << in.rdbuf();
      try {
        TFRegion region = TFRegion::from_rle(trim(text.str()));
        if (region.dim() != cfg.L) {
          fail("region.mask_file", "mask grid size " + std::to_string(region.dim()) +
                                       " does not match grid.L = " + std::to_string(cfg.L));
        }
        if (region.point_count() == 0) fail("region.mask_file", "mask is empty");
        return region;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        fail("region.mask_file", e.what());
      }
    }
  }
  fail("region.shape", "unhandled shape");
}

Window build_window(const ExperimentConfig& cfg) {
  if (cfg.window.kind == WindowKind::Gaussian) return make_gaussian_window(cfg.L);
  const auto path = resolve(cfg, cfg.window.file);
  try {
    const Signal s = read_signal_file(path);
    if (s.dim() != cfg.L) {
      fail("window.file", "signal length " + std::to_string(s.dim()) +
                              " does not match grid.L = " + std::to_string(cfg.L));
    }
    if (s.norm() == 0.0) fail("window.file", "window is identically zero");
    return Window::normalized(s);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail("window.file", e.what());
  }
}

}  // namespace relsamp::cli
