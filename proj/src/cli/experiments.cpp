#include "relsamp/cli/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "relsamp/bounds.hpp"
#include "relsamp/cli/signal_io.hpp"
#include "relsamp/error.hpp"
#include "relsamp/locop.hpp"
#include "relsamp/recon.hpp"
#include "relsamp/sampling.hpp"
#include "relsamp/seed.hpp"
#include "relsamp/witnesses.hpp"

namespace relsamp::cli {

namespace {

struct Context {
  TFRegion region;
  Window phi;
  EigenSystem eigs;
};

Context build_context(const ExperimentConfig& cfg, RunReport& report) {
  std::optional<TFRegion> region;
  std::optional<Window> phi;
  {
    StageTimer t(report, "setup");
    region = build_region(cfg);
    phi = build_window(cfg);
  }
  std::optional<LocalizationOperator> H;
  {
    StageTimer t(report, "localization_operator");
    H = build_localization_operator(*region, *phi);
  }
  StageTimer t(report, "eigendecompose");
  EigenSystem eigs = eigendecompose(*H, cfg.gamma, cfg.eig_residual);
  return {std::move(*region), std::move(*phi), std::move(eigs)};
}

Json region_json(const ExperimentConfig& cfg, const TFRegion& region) {
  Json j = Json::object();
  j["L"] = cfg.L;
  j["shape"] = to_string(cfg.region.shape);
  if (cfg.region.shape == RegionShape::Disk) {
    j["center_m"] = cfg.region.center.m;
    j["center_n"] = cfg.region.center.n;
    j["radius"] = cfg.region.radius;
  }
  j["points"] = region.point_count();
  j["measure"] = region.measure();
  j["fingerprint"] = region.fingerprint();
  j["rle"] = region.to_rle();
  return j;
}

Json spectrum_json(const EigenSystem& eigs, const TFRegion& region, const Window& phi) {
  Json j = Json::object();
  const int N = eigs.N();
  const double trace = eigs.eigenvalues().sum();
  j["gamma"] = eigs.gamma();
  j["N"] = N;
  j["measure"] = region.measure();
  j["trace"] = trace;
  j["trace_relative_error"] = std::abs(trace - region.measure()) / region.measure();
  j["alpha_first"] = eigs.alpha(0);
  j["alpha_N"] = N > 0 ? Json(eigs.alpha(N - 1)) : Json(nullptr);
  j["alpha_N_plus_1"] = N < eigs.dim() ? Json(eigs.alpha(N)) : Json(nullptr);
  j["numerical_rank"] = numerical_rank(eigs);
  j["max_residual"] = eigs.max_residual();

  const double delta = 1.0 - eigs.gamma();
  const auto interval = eigenvalue_count_estimate(region, phi, delta);
  const auto count = eigenvalue_count_above(eigs, 1.0 - delta);
  Json c = Json::object();
  c["delta"] = delta;
  c["count_above_1_minus_delta"] = count;
  c["double_integral"] = interval.double_integral;
  c["radius"] = interval.radius;
  c["lower"] = interval.lower;
  c["upper"] = interval.upper;
  c["contains_count"] = interval.contains(static_cast<double>(count));
  j["count_interval"] = c;
  return j;
}

std::string indexed_name(const std::string& stem, std::size_t k, const std::string& ext) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", k);
  return stem + buf + ext;
}

RMatrix stft_abs2(const Signal& f, const Window& phi) {
  return stft(f, phi).values().cwiseAbs2();
}

void write_lines(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

// Shortest text that reads back to the same double.
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Artifacts {
 public:
  Artifacts(RunReport& report, const RunOptions& options) : report_(report), options_(options) {
    if (enabled()) std::filesystem::create_directories(options_.out_dir);
  }
  bool enabled() const { return !options_.out_dir.empty(); }

  void grid(const std::string& name, const RMatrix& values) {
    if (!enabled()) return;
    write_grid_csv(options_.out_dir / name, values);
    report_.artifacts.push_back(name);
  }
  void text(const std::string& name, const std::string& body) {
    if (!enabled()) return;
    write_lines(options_.out_dir / name, body);
    report_.artifacts.push_back(name);
  }
  void signal(const std::string& name, const Signal& f) {
    if (!enabled()) return;
    const auto path = options_.out_dir / name;
    std::filesystem::create_directories(path.parent_path());
    write_signal_file(path, f);
    report_.artifacts.push_back(name);
  }

 private:
  RunReport& report_;
  const RunOptions& options_;
};

RMatrix sample_overlay(const SampleSet& samples) {
  RMatrix grid = RMatrix::Zero(samples.L, samples.L);
  for (const auto& p : samples.points) grid(p.m, p.n) += 1.0;
  return grid;
}

std::string samples_csv(const SampleSet& samples) {
  std::ostringstream out;
  out << "j,m,n\n";
  for (std::size_t j = 0; j < samples.size(); ++j) {
    out << j << "," << samples.points[j].m << "," << samples.points[j].n << "\n";
  }
  return out.str();
}

double concentration_ratio(const Signal& f, const EigenSystem& eigs) {
  return concentration(f, eigs).ratio();
}

Json sample_json(const SampleSet& s) {
  Json j = Json::object();
  j["r"] = s.size();
  j["distinct"] = s.distinct;
  j["seed"] = s.seed;
  j["region_fingerprint"] = s.region_id;
  return j;
}

RunReport start(const std::string& verb, const ExperimentConfig& cfg) {
  RunReport report;
  report.verb = verb;
  report.config = cfg;
  return report;
}

}  // namespace

std::uint64_t campaign_seed(std::uint64_t master_seed, std::size_t r) {
  return derive_seed(derive_seed(master_seed, 0x4D43ull), r);
}

std::uint64_t covering_seed(std::uint64_t master_seed, std::size_t r) {
  return derive_seed(derive_seed(master_seed, 0x4E30ull), r);
}

void write_grid_csv(const std::filesystem::path& path, const RMatrix& grid) {
  std::ostringstream out;
  char buf[32];
  for (Eigen::Index m = 0; m < grid.rows(); ++m) {
    for (Eigen::Index n = 0; n < grid.cols(); ++n) {
      std::snprintf(buf, sizeof buf, "%.9e", grid(m, n));
      if (n > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
  write_lines(path, out.str());
}

RunReport run_spectrum(const ExperimentConfig& cfg, const RunOptions& options) {
  RunReport report = start("spectrum", cfg);
  const Context ctx = build_context(cfg, report);
  report.sections["region"] = region_json(cfg, ctx.region);
  {
    StageTimer t(report, "count_interval");
    report.sections["spectrum"] = spectrum_json(ctx.eigs, ctx.region, ctx.phi);
  }

  StageTimer t(report, "artifacts");
  Artifacts out(report, options);
  std::ostringstream csv;
  csv << "index,alpha\n";
  for (int k = 0; k < ctx.eigs.dim(); ++k) csv << k + 1 << "," << fmt(ctx.eigs.alpha(k)) << "\n";
  out.text("eigenvalues.csv", csv.str());
  out.grid("psi1_stft_abs2.csv", stft_abs2(ctx.eigs.eigenvector(0), ctx.phi));
  RMatrix mask(cfg.L, cfg.L);
  for (int m = 0; m < cfg.L; ++m) {
    for (int n = 0; n < cfg.L; ++n) mask(m, n) = ctx.region.contains({m, n}) ? 1.0 : 0.0;
  }
  out.grid("region_mask.csv", mask);
  if (options.emit_eigenvectors) {
    for (int k = 0; k < ctx.eigs.N(); ++k) {
      out.signal(indexed_name("eigenvectors/psi_", k + 1, ".tfrs"), ctx.eigs.eigenvector(k));
    }
  }
  t.stop();
  return report;
}

RunReport run_reconstruct(const ExperimentConfig& cfg, const RunOptions& options) {
  RunReport report = start("reconstruct", cfg);
  const Context ctx = build_context(cfg, report);
  report.sections["region"] = region_json(cfg, ctx.region);
  Json spectrum = Json::object();
  spectrum["gamma"] = ctx.eigs.gamma();
  spectrum["N"] = ctx.eigs.N();
  spectrum["measure"] = ctx.region.measure();
  report.sections["spectrum"] = spectrum;
  if (ctx.eigs.N() == 0) throw Error(ErrorKind::Infeasible, "reconstruct: V_N is trivial");

  const std::uint64_t sample_seed = derive_seed(cfg.master_seed, kSampleStream);
  SampleSet samples;
  double B = 0.0;
  SubspaceFrameBounds frame;
  {
    StageTimer t(report, "sampling");
    samples = uniform_sample(ctx.region, cfg.r, sample_seed, cfg.distinct);
    B = exact_bessel_bound(samples, ctx.phi);
    frame = subspace_frame_bounds(samples, ctx.eigs, ctx.phi);
  }
  Json s = sample_json(samples);
  s["bessel_B"] = B;
  s["frame_lower"] = frame.lower;
  s["frame_upper"] = frame.upper;
  report.sections["samples"] = s;

  Artifacts out(report, options);
  out.text("samples.csv", samples_csv(samples));
  out.grid("sample_overlay.csv", sample_overlay(samples));

  struct Job {
    std::string label;
    std::optional<double> target;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < cfg.epsilon_targets.size(); ++i) {
    jobs.push_back({"eps_" + std::to_string(i), cfg.epsilon_targets[i],
                    derive_seed(cfg.master_seed, kFunctionStream + i)});
  }
  if (cfg.include_subspace_function) {
    jobs.push_back({"subspace", std::nullopt,
                    derive_seed(cfg.master_seed, kFunctionStream + cfg.epsilon_targets.size())});
  }

  ReconstructionOptions ropt;
  ropt.tol = cfg.cg_tol;
  Json rows = Json::array();
  Json coefficients = Json::object();
  StageTimer t(report, "reconstruct");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    Json row = Json::object();
    row["row"] = i;
    row["label"] = job.label;
    row["epsilon_target"] = job.target ? Json(*job.target) : Json(nullptr);
    row["function_seed"] = job.seed;
    row["sample_seed"] = sample_seed;
    std::optional<Signal> f;
    try {
      f = job.target ? make_concentrated_test_function(ctx.eigs, *job.target, job.seed)
                     : random_subspace_function(ctx.eigs, job.seed);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Infeasible) throw;
      row["status"] = "infeasible";
      row["message"] = e.what();
      rows.push_back(row);
      continue;
    }
    const auto res = reconstruct(*f, samples, ctx.eigs, ctx.phi, ctx.region, ropt);
    row["status"] = res.converged ? "ok" : "not_converged";
    row["epsilon"] = res.epsilon;
    row["relative_error"] = res.relative_error;
    row["error_bound"] = res.error_bound;
    row["bound_holds"] = res.relative_error <= res.error_bound;
    row["iterations"] = res.iterations;
    row["normal_residual"] = res.normal_residual;
    row["residual_norm"] = res.residual_norm;
    rows.push_back(row);
    if (!res.converged) report.exit_code = 3;

    out.grid("stft_abs_" + job.label + ".csv", stft_abs2(*f, ctx.phi).cwiseSqrt());
    out.signal("functions/" + job.label + ".tfrs", *f);
    if (cfg.emit_coefficients) {
      Json c = Json::array();
      for (Eigen::Index k = 0; k < res.coefficients.size(); ++k) {
        c.push_back(Json::array({res.coefficients[k].real(), res.coefficients[k].imag()}));
      }
      coefficients[job.label] = c;
    }
  }
  report.sections["rows"] = rows;
  if (cfg.emit_coefficients) report.sections["coefficients"] = coefficients;
  t.stop();
  return report;
}

RunReport run_montecarlo(const ExperimentConfig& cfg, const RunOptions& options) {
  RunReport report = start("montecarlo", cfg);
  const Context ctx = build_context(cfg, report);
  report.sections["region"] = region_json(cfg, ctx.region);
  const double omega = ctx.region.measure();
  const int N = ctx.eigs.N();
  if (N == 0) throw Error(ErrorKind::Infeasible, "montecarlo: V_N is trivial");
  const int cell_px = cfg.effective_cell_px();
  const double eps1 = covering_excess(ctx.region, cell_px);
  const double eps2 = static_cast<double>(N) - omega;

  Json params = Json::object();
  params["measure"] = omega;
  params["N"] = N;
  params["gamma"] = cfg.gamma;
  params["cell_px"] = cell_px;
  params["eps1"] = eps1;
  params["eps2"] = eps2;
  params["covering_rate"] = 3.0 / omega;
  params["delta"] = cfg.delta;
  params["trials"] = cfg.trials;
  report.sections["parameters"] = params;

  struct Cell {
    std::size_t r;
    std::string kind;
    std::optional<double> nu;  // required-r cells are evaluated at their own nu only
  };
  std::vector<Cell> cells;
  for (std::size_t r : cfg.r_grid) cells.push_back({r, "grid", std::nullopt});
  if (cfg.include_required_r) {
    for (double nu : cfg.nu_grid) {
      if (nu > 0.0) cells.push_back({required_samples(nu, cfg.delta, omega, eps2), "required", nu});
    }
  }

  std::optional<RegionSampleTable> table;
  {
    StageTimer t(report, "sample_table");
    table.emplace(ctx.region, ctx.eigs, ctx.phi);
  }

  Json rows = Json::array();
  Json covering_rows = Json::array();
  std::ostringstream csv;
  csv << "nu,r,empirical_freq,theory_bound,trials,master_seed\n";
  bool all_within = true;
  StageTimer t(report, "campaigns");
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    const std::uint64_t seed = campaign_seed(cfg.master_seed, cell.r);
    const auto stats = monte_carlo_min_eigenvalues(*table, cfg.trials, cell.r, seed,
                                                   options.threads);
    const std::vector<double> nus = cell.nu ? std::vector<double>{*cell.nu} : cfg.nu_grid;
    for (double nu : nus) {
      TailParams p = TailParams::with_default_rate(nu, static_cast<double>(cell.r), omega,
                                                   static_cast<double>(N), eps1, eps2);
      const double freq = failure_frequency(stats, nu, omega);
      const double sigma = binomial_sigma(freq, cfg.trials);
      const double raw = subspace_failure_bound(p);
      const double theory = std::min(1.0, raw);
      const bool within = freq <= theory + 4.0 * sigma;
      all_within = all_within && within;
      Json row = Json::object();
      row["kind"] = cell.kind;
      row["nu"] = nu;
      row["r"] = cell.r;
      row["empirical_freq"] = freq;
      row["sigma"] = sigma;
      row["theory_bound"] = theory;
      row["subspace_bound_raw"] = raw;
      row["within_4_sigma"] = within;
      row["covering_tail"] = covering_tail(p);
      row["success_probability"] = success_probability(p);
      row["required_samples"] =
          nu > 0.0 ? Json(required_samples(nu, cfg.delta, omega, eps2)) : Json(nullptr);
      row["trials"] = cfg.trials;
      row["campaign_seed"] = seed;
      rows.push_back(row);
      csv << fmt(nu) << "," << cell.r << "," << fmt(freq) << "," << fmt(theory) << ","
          << cfg.trials << "," << seed << "\n";
    }
    if (cell.kind == "grid") {
      const std::uint64_t cseed = covering_seed(cfg.master_seed, cell.r);
      const auto counts =
          monte_carlo_covering(ctx.region, cell.r, cell_px, cfg.trials, cseed, options.threads);
      const double threshold = 3.0 * static_cast<double>(cell.r) / omega;
      const auto exceed = std::count_if(counts.begin(), counts.end(), [&](std::size_t n0) {
        return static_cast<double>(n0) > threshold;
      });
      const double freq = static_cast<double>(exceed) / cfg.trials;
      const double sigma = binomial_sigma(freq, cfg.trials);
      const double bound = std::min(
          1.0, covering_tail(TailParams::with_default_rate(0.0, static_cast<double>(cell.r),
                                                           omega, N, eps1, eps2)));
      const bool within = freq <= bound + 4.0 * sigma;
      all_within = all_within && within;
      Json row = Json::object();
      row["r"] = cell.r;
      row["threshold"] = threshold;
      row["empirical_freq"] = freq;
      row["sigma"] = sigma;
      row["theory_bound"] = bound;
      row["within_4_sigma"] = within;
      row["max_N0"] = *std::max_element(counts.begin(), counts.end());
      row["trials"] = cfg.trials;
      row["covering_seed"] = cseed;
      covering_rows.push_back(row);
    }
  }
  report.sections["cells"] = rows;
  report.sections["covering"] = covering_rows;
  report.sections["summary"] = Json{{"all_within_4_sigma", all_within}};

  Artifacts out(report, options);
  out.text("montecarlo.csv", csv.str());
  t.stop();
  return report;
}

RunReport run_certify(const ExperimentConfig& cfg, const RunOptions& options) {
  RunReport report = start("certify", cfg);
  const Context ctx = build_context(cfg, report);
  report.sections["region"] = region_json(cfg, ctx.region);
  const double omega = ctx.region.measure();
  const int N = ctx.eigs.N();
  if (N == 0) throw Error(ErrorKind::Infeasible, "certify: V_N is trivial");
  const int cell_px = cfg.effective_cell_px();

  const std::uint64_t sample_seed = derive_seed(cfg.master_seed, kSampleStream);
  SampleSet samples;
  BoundReport br;
  double statistic = 0.0;
  SubspaceFrameBounds frame;
  {
    StageTimer t(report, "bounds");
    samples = uniform_sample(ctx.region, cfg.r, sample_seed, cfg.distinct);
    br = make_bound_report(samples, ctx.phi, ctx.region, cfg.gamma, cfg.certify_epsilon, cfg.nu,
                           cell_px);
    statistic = empirical_min_eigenvalue(samples, ctx.eigs, ctx.region, ctx.phi);
    frame = subspace_frame_bounds(samples, ctx.eigs, ctx.phi);
  }
  report.sections["samples"] = sample_json(samples);

  Json b = Json::object();
  b["r"] = br.r;
  b["measure"] = br.omega_measure;
  b["gamma"] = br.gamma;
  b["eps"] = br.eps;
  b["nu"] = br.nu;
  b["cell_px"] = br.cell_px;
  b["N0"] = br.N0;
  b["bessel_B"] = br.bessel_B;
  b["C_phi"] = br.C_phi;
  b["eps_max"] = br.eps_max;
  b["nu_max"] = br.nu_max;
  b["theorem_admissible"] = br.theorem_admissible;
  b["A_lemma"] = br.A_lemma;
  b["A_theorem"] = br.A_theorem;
  b["lemma_vacuous"] = br.lemma_vacuous;
  b["theorem_vacuous"] = br.theorem_vacuous;
  report.sections["bound_report"] = b;

  const double eps1 = covering_excess(ctx.region, cell_px);
  const double eps2 = static_cast<double>(N) - omega;
  const TailParams p = TailParams::with_default_rate(cfg.nu, static_cast<double>(cfg.r), omega,
                                                     static_cast<double>(N), eps1, eps2);
  Json ev = Json::object();
  ev["N"] = N;
  ev["min_centered_eigenvalue"] = statistic;
  ev["threshold"] = -cfg.nu / omega;
  ev["event_holds"] = statistic > -cfg.nu / omega;
  ev["frame_lower"] = frame.lower;
  ev["frame_upper"] = frame.upper;
  ev["eps1"] = eps1;
  ev["eps2"] = eps2;
  ev["success_probability"] = success_probability(p);
  ev["required_samples"] =
      cfg.nu > 0.0 ? Json(required_samples(cfg.nu, cfg.delta, omega, eps2)) : Json(nullptr);
  report.sections["event"] = ev;

  Json rows = Json::array();
  bool all_lower_lemma = true;
  bool all_upper = true;
  StageTimer t(report, "batch");
  for (int i = 0; i < cfg.batch; ++i) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, kFunctionStream + i);
    Json row = Json::object();
    row["index"] = i;
    row["function_seed"] = seed;
    std::optional<Signal> f;
    try {
      f = make_concentrated_test_function(ctx.eigs, cfg.certify_epsilon, seed);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Infeasible) throw;
      row["status"] = "infeasible";
      row["message"] = e.what();
      rows.push_back(row);
      continue;
    }
    const auto lemma = verify_sampling_inequality(*f, samples, ctx.phi, br.A_lemma);
    row["status"] = "ok";
    row["epsilon"] = concentration(*f, ctx.region, ctx.phi).epsilon;
    row["sample_energy"] = lemma.sample_energy;
    row["norm_squared"] = lemma.norm_squared;
    row["ratio"] = lemma.ratio;
    row["lower_holds_lemma"] = lemma.lower_holds;
    row["lower_holds_theorem"] =
        br.theorem_admissible
            ? Json(verify_sampling_inequality(*f, samples, ctx.phi, br.A_theorem).lower_holds)
            : Json(nullptr);
    row["upper_holds"] = lemma.upper_holds;
    all_lower_lemma = all_lower_lemma && lemma.lower_holds;
    all_upper = all_upper && lemma.upper_holds;
    rows.push_back(row);
  }
  report.sections["batch"] = rows;
  Json summary = Json::object();
  summary["certificate_vacuous"] = br.lemma_vacuous;
  summary["certified"] = !br.lemma_vacuous && statistic > -cfg.nu / omega;
  summary["all_lower_hold_lemma"] = all_lower_lemma;
  summary["all_upper_hold"] = all_upper;
  report.sections["summary"] = summary;
  (void)options;
  t.stop();
  return report;
}

RunReport run_witness(const ExperimentConfig& cfg, const RunOptions& options) {
  RunReport report = start("witness", cfg);
  const Context ctx = build_context(cfg, report);
  report.sections["region"] = region_json(cfg, ctx.region);
  Artifacts out(report, options);
  const double eps = cfg.witness_epsilon;

  {
    StageTimer t(report, "nonlinearity");
    const auto w = nonlinearity_witness(ctx.eigs, eps, cfg.witness_eta);
    const Signal dh = w.delta * w.h;
    Json j = Json::object();
    j["epsilon"] = eps;
    j["eta"] = w.eta;
    j["M"] = w.M + 1;
    j["alpha_M"] = ctx.eigs.alpha(w.M);
    j["delta"] = w.delta;
    j["indices"] = Json::array({w.indices[0] + 1, w.indices[1] + 1, w.indices[2] + 1});
    j["coefficients"] = Json::array({w.coefficients[0], w.coefficients[1], w.coefficients[2]});
    j["h_norm"] = w.h.norm();
    j["concentration_psi_M"] = concentration_ratio(w.psi_M, ctx.eigs);
    j["concentration_f"] = concentration_ratio(w.f, ctx.eigs);
    j["concentration_delta_h"] = concentration_ratio(dh, ctx.eigs);
    j["psi_M_concentrated"] = concentration(w.psi_M, ctx.eigs).concentrated(eps);
    j["f_concentrated"] = concentration(w.f, ctx.eigs).concentrated(eps);
    j["delta_h_concentrated"] = concentration(dh, ctx.eigs).concentrated(eps);
    report.sections["nonlinearity"] = j;
    out.signal("witness/nonlinearity_f.tfrs", w.f);
    out.signal("witness/nonlinearity_psi_M.tfrs", w.psi_M);
    out.signal("witness/nonlinearity_h.tfrs", w.h);
  }

  StageTimer t(report, "null_sample");
  const std::uint64_t sample_seed = derive_seed(cfg.master_seed, kSampleStream);
  const std::uint64_t function_seed = derive_seed(cfg.master_seed, kFunctionStream);
  const SampleSet samples = uniform_sample(ctx.region, cfg.effective_witness_r(), sample_seed, true);
  const Signal f = make_concentrated_test_function(ctx.eigs, eps / 2.0, function_seed);
  const auto a = null_sample_witness(samples, ctx.phi, f, ctx.eigs, eps);
  double max_diff = 0.0;
  for (const auto& q : samples.points) {
    max_diff = std::max(max_diff,
                        std::abs(stft_point(a.f, ctx.phi, q) - stft_point(a.f_tilde, ctx.phi, q)));
  }
  ReconstructionOptions ropt;
  ropt.tol = cfg.cg_tol;
  const auto r1 = reconstruct(a.f, samples, ctx.eigs, ctx.phi, ctx.region, ropt);
  const auto r2 = reconstruct(a.f_tilde, samples, ctx.eigs, ctx.phi, ctx.region, ropt);
  if (!r1.converged || !r2.converged) report.exit_code = 3;
  Json j = sample_json(samples);
  j["function_seed"] = function_seed;
  j["epsilon"] = eps;
  j["delta"] = a.delta;
  j["complement_dim"] = a.complement_dim;
  j["phi_perp_concentration"] = a.phi_perp_concentration;
  j["difference_norm"] = (a.f - a.f_tilde).norm();
  j["max_sample_difference"] = max_diff;
  j["concentration_f"] = concentration(a.f, ctx.region, ctx.phi).ratio();
  j["concentration_f_tilde"] = concentration(a.f_tilde, ctx.region, ctx.phi).ratio();
  j["p_opt_difference"] = (r1.p_opt - r2.p_opt).norm();
  report.sections["null_sample"] = j;
  out.text("witness/samples.csv", samples_csv(samples));
  out.signal("witness/alias_f.tfrs", a.f);
  out.signal("witness/alias_f_tilde.tfrs", a.f_tilde);
  out.signal("witness/alias_phi_perp.tfrs", a.phi_perp);
  t.stop();
  return report;
}

RunReport run_verb(const std::string& verb, const ExperimentConfig& config,
                   const RunOptions& options) {
  if (verb == "spectrum") return run_spectrum(config, options);
  if (verb == "reconstruct") return run_reconstruct(config, options);
  if (verb == "montecarlo") return run_montecarlo(config, options);
  if (verb == "certify") return run_certify(config, options);
  if (verb == "witness") return run_witness(config, options);
  throw Error(ErrorKind::Config, "unknown verb '" + verb + "'");
}

}  // namespace relsamp::cli
