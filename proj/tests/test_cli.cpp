#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "relsamp/cli/config.hpp"
#include "relsamp/cli/experiments.hpp"
#include "relsamp/cli/report.hpp"
#include "relsamp/cli/signal_io.hpp"
#include "relsamp/error.hpp"
#include "relsamp/locop.hpp"
#include "relsamp/recon.hpp"
#include "relsamp/sampling.hpp"
#include "relsamp/seed.hpp"

using namespace relsamp;
using namespace relsamp::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  static int counter = 0;
  std::mt19937_64 rng(std::random_device{}());
  const fs::path dir = fs::temp_directory_path() /
                       ("relsamp_test_" + tag + "_" + std::to_string(++counter) + "_" +
                        std::to_string(rng() % 1000000007ull));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const std::string kSmall =
    "schema_version = 1\n"
    "[grid]\nL = 48\n"
    "[region]\nshape = disk\nradius = 12\n"
    "[sampling]\nr = 80\n";

// Expects a Config error whose message names the field.
void check_config_error(const std::string& text, const std::string& field) {
  try {
    parse_config_string(text);
    FAIL("expected a config error for " << field);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK_MESSAGE(std::string(e.what()).find(field) != std::string::npos, std::string(e.what()));
  }
}

}  // namespace

TEST_CASE("config defaults and field values") {
  const auto cfg = parse_config_string(kSmall);
  CHECK(cfg.L == 48);
  CHECK(cfg.region.shape == RegionShape::Disk);
  CHECK(cfg.region.center == TFPoint{24, 24});
  CHECK(cfg.region.radius == 12.0);
  CHECK(cfg.window.kind == WindowKind::Gaussian);
  CHECK(cfg.gamma == 0.5);
  CHECK(cfg.r == 80);
  CHECK(cfg.distinct);
  CHECK(cfg.effective_cell_px() == 7);
  CHECK(cfg.epsilon_targets == std::vector<double>{0.0335, 1.8252e-9});
  CHECK(cfg.trials == 2000);
  CHECK(cfg.master_seed == 1);
  CHECK(cfg.cg_tol == 1e-12);
  CHECK(cfg.effective_witness_r() == 12);

  const auto full = parse_config_string(
      "schema_version = 1\n[grid]\nL = 64\n[region]\nshape = disk\ncenter_m = 10\n"
      "center_n = 50\nradius = 7.5\n[spectrum]\ngamma = 0.25\n[sampling]\nr = 17\n"
      "distinct = no\ncell_px = 5\nnu = 0.2\n[certify]\nepsilon = 0.01\nbatch = 3\n"
      "[reconstruct]\nepsilon_targets = 0.1,1e-4 , 3e-2\ninclude_subspace_function = false\n"
      "emit_coefficients = true\n[montecarlo]\ntrials = 11\nnu_grid = 0, 0.5\n"
      "r_grid = 5\ndelta = 0.1\ninclude_required_r = off\n[witness]\nepsilon = 0.2\n"
      "eta = 3\nr = 9\n[seeds]\nmaster_seed = 18446744073709551615\n"
      "[tolerances]\ncg_tol = 1e-10\neig_residual = 1e-6\n");
  CHECK(full.region.center == TFPoint{10, 50});
  CHECK(full.region.radius == 7.5);
  CHECK(full.gamma == 0.25);
  CHECK_FALSE(full.distinct);
  CHECK(full.effective_cell_px() == 5);
  CHECK(full.epsilon_targets == std::vector<double>{0.1, 1e-4, 3e-2});
  CHECK(full.nu_grid == std::vector<double>{0.0, 0.5});
  CHECK(full.r_grid == std::vector<std::size_t>{5});
  CHECK_FALSE(full.include_required_r);
  CHECK(full.master_seed == 18446744073709551615ull);
  CHECK(full.witness_eta == 3.0);
  CHECK(full.eig_residual == 1e-6);

  // The echo is itself a valid configuration with identical content.
  const auto again = parse_config_string(echo_config(full));
  CHECK(echo_config(again) == echo_config(full));
  CHECK(again.epsilon_targets == full.epsilon_targets);
}

TEST_CASE("config errors name the offending field") {
  check_config_error("[grid]\nL = 48\n", "schema_version");
  check_config_error("schema_version = 2\n[grid]\nL = 48\n", "schema_version");
  check_config_error("schema_version = 1\n", "grid.L");
  check_config_error("schema_version = 1\n[grid]\nL = 48x\n", "grid.L");
  check_config_error("schema_version = 1\n[grid]\nL = 2\n", "grid.L");
  check_config_error(kSmall + "[grid2]\nx = 1\n", "[grid2]");
  check_config_error(kSmall + "[tolerances]\ncg_tol = 1e-9\nfoo = 1\n", "tolerances.foo");
  check_config_error("schema_version = 1\n[grid]\nL = 48\n[region]\nshape = disk\n",
                     "region.radius");
  check_config_error("schema_version = 1\n[grid]\nL = 48\n[region]\nshape = disk\nradius = 30\n",
                     "region.radius");
  check_config_error("schema_version = 1\n[grid]\nL = 48\n[region]\nshape = blob\n",
                     "region.shape");
  check_config_error("schema_version = 1\n[grid]\nL = 48\n[region]\nshape = mask\n",
                     "region.mask_file");
  check_config_error("schema_version = 1\n[grid]\nL = 48\n[region]\nshape = full\nradius = 3\n",
                     "region.radius");
  check_config_error(kSmall + "[window]\nkind = file\n", "window.file");
  check_config_error(kSmall + "[spectrum]\ngamma = 1.5\n", "spectrum.gamma");
  check_config_error(kSmall + "[spectrum]\ngamma = nan\n", "spectrum.gamma");
  check_config_error(kSmall + "[reconstruct]\nepsilon_targets = 0.1,,0.2\n",
                     "reconstruct.epsilon_targets");
  check_config_error(kSmall + "[reconstruct]\nepsilon_targets = 0.1, 1.0\n",
                     "reconstruct.epsilon_targets");
  check_config_error(kSmall + "[montecarlo]\ntrials = 0\n", "montecarlo.trials");
  check_config_error(kSmall + "[montecarlo]\nr_grid = 10, -3\n", "montecarlo.r_grid");
  check_config_error(kSmall + "[witness]\nepsilon = 0.4\neta = 3\n", "witness.eta");
  check_config_error(kSmall + "[certify]\nepsilon = 0.6\n", "certify.epsilon");
  check_config_error(kSmall + "[seeds]\nmaster_seed = -1\n", "seeds.master_seed");
  check_config_error("schema_version = 1\n[grid]\nL = 48\n[region]\nradius = 12\n[sampling]\n"
                     "distinct = maybe\n",
                     "sampling.distinct");
  check_config_error(kSmall + "[tolerances]\ncg_tol = 0\n", "tolerances.cg_tol");
  check_config_error("schema_version = 1\n[grid\nL = 4\n", "line");
  CHECK_THROWS_AS(load_config("/nonexistent/relsamp.ini"), Error);
}

TEST_CASE("TFRS round trip and byte layout") {
  std::mt19937_64 rng(91);
  const Signal f = oracle::random_signal(13, rng);
  std::stringstream buf;
  write_signal(buf, f);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 12 + 16 * 13);
  CHECK(bytes.substr(0, 4) == "TFRS");
  const auto u32_at = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(bytes[off + i]);
    return v;
  };
  CHECK(u32_at(4) == 1);
  CHECK(u32_at(8) == 13);
  std::uint64_t raw = 0;
  for (int i = 7; i >= 0; --i) raw = (raw << 8) | static_cast<unsigned char>(bytes[12 + i]);
  double first = 0.0;
  std::memcpy(&first, &raw, sizeof first);
  CHECK(first == f[0].real());

  std::stringstream in(bytes);
  const Signal g = read_signal(in);
  CHECK((g - f).norm() == 0.0);

  const auto expect_io = [](const std::string& data) {
    std::stringstream s(data);
    try {
      read_signal(s);
      FAIL("expected an io error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
    }
  };
  expect_io("TFRX" + bytes.substr(4));
  expect_io(bytes.substr(0, bytes.size() - 3));
  expect_io(bytes + "x");
  std::string v2 = bytes;
  v2[4] = 2;
  expect_io(v2);
  std::string zero_len = bytes.substr(0, 12);
  zero_len[8] = 0;
  expect_io(zero_len);

  const fs::path dir = scratch_dir("tfrs");
  write_signal_file(dir / "f.tfrs", f);
  CHECK((read_signal_file(dir / "f.tfrs") - f).norm() == 0.0);
  CHECK_THROWS_AS(read_signal_file(dir / "missing.tfrs"), Error);
  fs::remove_all(dir);
}

TEST_CASE("mask regions and window files are loaded relative to the config") {
  const fs::path dir = scratch_dir("files");
  const TFRegion disk = disk_region(32, {10, 20}, 5.0);
  write_file(dir / "mask.rle", disk.to_rle() + "\n");
  const Window gauss = make_gaussian_window(32);
  write_signal_file(dir / "window.tfrs", Complex(3.0, 0.0) * gauss.signal());
  write_file(dir / "exp.ini",
             "schema_version = 1\n[grid]\nL = 32\n[region]\nshape = mask\n"
             "mask_file = mask.rle\n[window]\nkind = file\nfile = window.tfrs\n");
  const auto cfg = load_config(dir / "exp.ini");
  const TFRegion region = build_region(cfg);
  CHECK(region.mask() == disk.mask());
  const Window phi = build_window(cfg);
  CHECK((phi.signal() - gauss.signal()).norm() <= 1e-15);

  // The echoed config is re-runnable from another directory.
  const auto echoed = parse_config_string(echo_config(cfg));
  CHECK(build_region(echoed).mask() == disk.mask());

  const auto expect_config = [&](const std::string& text, const std::string& field) {
    const auto bad = parse_config_string(text, dir);
    try {
      build_region(bad);
      build_window(bad);
      FAIL("expected a config error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  expect_config("schema_version = 1\n[grid]\nL = 48\n[region]\nshape = mask\nmask_file = mask.rle\n",
                "region.mask_file");
  expect_config("schema_version = 1\n[grid]\nL = 32\n[region]\nshape = mask\nmask_file = none\n",
                "region.mask_file");
  write_file(dir / "garbage.rle", "32:5,x");
  expect_config("schema_version = 1\n[grid]\nL = 32\n[region]\nshape = mask\n"
                "mask_file = garbage.rle\n",
                "region.mask_file");
  expect_config("schema_version = 1\n[grid]\nL = 16\n[region]\nshape = full\n[window]\n"
                "kind = file\nfile = window.tfrs\n",
                "window.file");
  write_signal_file(dir / "zero.tfrs", Signal::zeros(16));
  expect_config("schema_version = 1\n[grid]\nL = 16\n[region]\nshape = full\n[window]\n"
                "kind = file\nfile = zero.tfrs\n",
                "window.file");
  fs::remove_all(dir);
}

TEST_CASE("spectrum run: full grid and the eigencount interval") {
  const auto full = parse_config_string("schema_version = 1\n[grid]\nL = 16\n[region]\nshape = full\n");
  const auto rep = run_spectrum(full);
  const auto& s = rep.sections["spectrum"];
  CHECK(s["N"].get<int>() == 16);
  CHECK(std::abs(s["trace"].get<double>() - 16.0) <= 1e-10);

  const auto cfg = parse_config_string(kSmall);
  const fs::path dir = scratch_dir("spectrum");
  RunOptions opt;
  opt.out_dir = dir;
  opt.emit_eigenvectors = true;
  const auto r = run_spectrum(cfg, opt);
  const auto& sp = r.sections["spectrum"];
  const auto& ci = sp["count_interval"];
  CHECK(ci["contains_count"].get<bool>());
  CHECK(ci["lower"].get<double>() <= sp["N"].get<int>());
  CHECK(sp["N"].get<int>() <= ci["upper"].get<double>());
  CHECK(sp["trace_relative_error"].get<double>() <= 1e-12);

  // eigenvalues.csv against an independent eigensolve.
  const EigenSystem eigs = eigendecompose(
      build_localization_operator(build_region(cfg), build_window(cfg)));
  std::istringstream csv(read_file(dir / "eigenvalues.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "index,alpha");
  int k = 0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    CHECK(std::stoi(line.substr(0, comma)) == k + 1);
    CHECK(std::abs(std::stod(line.substr(comma + 1)) - eigs.alpha(k)) <= 1e-12);
    ++k;
  }
  CHECK(k == 48);

  // Grid dump: L rows of L values, summing to L |psi_1|^2 energy.
  std::istringstream grid(read_file(dir / "psi1_stft_abs2.csv"));
  double total = 0.0;
  int rows = 0;
  while (std::getline(grid, line)) {
    std::istringstream cells(line);
    std::string cell;
    int cols = 0;
    while (std::getline(cells, cell, ',')) {
      total += std::stod(cell);
      ++cols;
    }
    CHECK(cols == 48);
    ++rows;
  }
  CHECK(rows == 48);
  CHECK(std::abs(total / 48.0 - 1.0) <= 1e-6);

  const Signal psi3 = read_signal_file(dir / "eigenvectors/psi_0003.tfrs");
  CHECK(std::abs(concentration(psi3, eigs).value - eigs.alpha(2)) <= 1e-12);
  CHECK(fs::exists(dir / "eigenvectors" /
                   ("psi_000" + std::to_string(sp["N"].get<int>()) + ".tfrs")));
  fs::remove_all(dir);
}

TEST_CASE("reconstruct run: rows, infeasible targets and provenance seeds") {
  auto cfg = parse_config_string(kSmall + "[reconstruct]\nepsilon_targets = 0.1, 0.999, 1e-3\n"
                                          "emit_coefficients = true\n");
  const auto rep = run_reconstruct(cfg);
  const auto& rows = rep.sections["rows"];
  REQUIRE(rows.size() == 4);
  CHECK(rows[1]["status"] == "infeasible");
  CHECK(rows[0]["status"] == "ok");
  CHECK(rows[2]["status"] == "ok");
  for (int i : {0, 2, 3}) {
    CHECK(rows[i]["bound_holds"].get<bool>());
    CHECK(rows[i]["relative_error"].get<double>() <= rows[i]["error_bound"].get<double>());
  }
  CHECK(rows[3]["label"] == "subspace");
  CHECK(rows[3]["relative_error"].get<double>() <= 1e-10);
  CHECK(rep.sections["coefficients"].contains("eps_0"));
  CHECK_FALSE(rep.sections["coefficients"].contains("eps_1"));
  CHECK(rep.exit_code == 0);

  // The echoed seeds regenerate the inputs of a row.
  const TFRegion region = build_region(cfg);
  const Window phi = build_window(cfg);
  const EigenSystem eigs = eigendecompose(build_localization_operator(region, phi));
  const SampleSet s = uniform_sample(region, cfg.r, rows[2]["sample_seed"].get<std::uint64_t>(),
                                     cfg.distinct);
  const Signal f =
      make_concentrated_test_function(eigs, 1e-3, rows[2]["function_seed"].get<std::uint64_t>());
  const auto res = reconstruct(f, s, eigs, phi, region);
  CHECK(res.relative_error == doctest::Approx(rows[2]["relative_error"].get<double>()));
  CHECK(rows[2]["function_seed"].get<std::uint64_t>() ==
        derive_seed(cfg.master_seed, kFunctionStream + 2));
}

TEST_CASE("reconstruct run: full-grid samples recover V_N exactly") {
  const auto cfg = parse_config_string(
      "schema_version = 1\n[grid]\nL = 8\n[region]\nshape = full\n[sampling]\nr = 64\n"
      "[reconstruct]\nepsilon_targets =\n");
  const auto rep = run_reconstruct(cfg);
  const auto& rows = rep.sections["rows"];
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["iterations"].get<int>() == 1);
  CHECK(rows[0]["relative_error"].get<double>() <= 1e-12);
  CHECK(std::abs(rep.sections["samples"]["frame_lower"].get<double>() - 8.0) <= 1e-10);
}

TEST_CASE("runs are deterministic and seed-sensitive") {
  const auto cfg = parse_config_string(kSmall + "[montecarlo]\ntrials = 50\nr_grid = 60\n"
                                                "[certify]\nbatch = 3\n");
  for (const char* verb : {"spectrum", "reconstruct", "montecarlo", "certify", "witness"}) {
    const auto a = run_verb(verb, cfg);
    RunOptions threaded;
    threaded.threads = 3;
    const auto b = run_verb(verb, cfg, threaded);
    CHECK_MESSAGE(report_json(a).dump() == report_json(b).dump(), verb);
    CHECK(render_text(a) == render_text(b));
  }
  auto other = cfg;
  other.master_seed = 2;
  CHECK(report_json(run_reconstruct(cfg)).dump() != report_json(run_reconstruct(other)).dump());
  CHECK_THROWS_AS(run_verb("plot", cfg), Error);
}

TEST_CASE("montecarlo run: bounds, zero-nu column and csv layout") {
  const auto cfg = parse_config_string(kSmall + "[montecarlo]\ntrials = 300\nr_grid = 100, 400\n"
                                                "nu_grid = 0, 0.3, 0.5\n");
  const fs::path dir = scratch_dir("mc");
  RunOptions opt;
  opt.out_dir = dir;
  const auto rep = run_montecarlo(cfg, opt);
  const int N = rep.sections["parameters"]["N"].get<int>();
  for (const auto& row : rep.sections["cells"]) {
    CHECK(row["within_4_sigma"].get<bool>());
    if (row["nu"].get<double>() == 0.0) {
      CHECK(row["subspace_bound_raw"].get<double>() == doctest::Approx(N));
      CHECK(row["theory_bound"].get<double>() == 1.0);
      CHECK(row["required_samples"].is_null());
    }
    if (row["kind"] == "required") {
      CHECK(row["theory_bound"].get<double>() <= cfg.delta / 2.0);
      CHECK(row["r"].get<std::size_t>() == row["required_samples"].get<std::size_t>());
    }
    CHECK(row["campaign_seed"].get<std::uint64_t>() ==
          campaign_seed(cfg.master_seed, row["r"].get<std::size_t>()));
  }
  for (const auto& row : rep.sections["covering"]) CHECK(row["within_4_sigma"].get<bool>());
  CHECK(rep.sections["summary"]["all_within_4_sigma"].get<bool>());

  std::istringstream csv(read_file(dir / "montecarlo.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "nu,r,empirical_freq,theory_bound,trials,master_seed");
  int count = 0;
  while (std::getline(csv, line)) ++count;
  CHECK(count == static_cast<int>(rep.sections["cells"].size()));
  CHECK(count == 2 * 3 + 2);
  fs::remove_all(dir);
}

TEST_CASE("certify run: vacuous at small r, certified at the required r") {
  const auto small = run_certify(parse_config_string(kSmall + "[certify]\nbatch = 4\n"));
  CHECK(small.sections["bound_report"]["lemma_vacuous"].get<bool>());
  CHECK_FALSE(small.sections["summary"]["certified"].get<bool>());
  for (const auto& row : small.sections["batch"]) CHECK(row["upper_holds"].get<bool>());

  const double omega = disk_region(48, {24, 24}, 12.0).measure();
  const std::size_t r = required_samples(0.1, 0.05, omega, 9.0 - omega);
  const auto cfg = parse_config_string(
      "schema_version = 1\n[grid]\nL = 48\n[region]\nradius = 12\n[sampling]\nr = " +
      std::to_string(r) + "\ndistinct = false\nnu = 0.1\n[certify]\nepsilon = 0.01\nbatch = 10\n");
  const auto rep = run_certify(cfg);
  const auto& br = rep.sections["bound_report"];
  CHECK(br["A_lemma"].get<double>() > 0.0);
  CHECK(rep.sections["event"]["required_samples"].get<std::size_t>() == r);
  CHECK(rep.sections["event"]["event_holds"].get<bool>());
  CHECK(rep.sections["summary"]["certified"].get<bool>());
  CHECK(rep.sections["summary"]["all_lower_hold_lemma"].get<bool>());
  CHECK(rep.sections["summary"]["all_upper_hold"].get<bool>());
  for (const auto& row : rep.sections["batch"]) {
    CHECK(row["sample_energy"].get<double>() >= br["A_lemma"].get<double>());
  }
}

TEST_CASE("witness run") {
  const auto rep = run_witness(parse_config_string(kSmall));
  const auto& nl = rep.sections["nonlinearity"];
  CHECK(nl["f_concentrated"].get<bool>());
  CHECK(nl["psi_M_concentrated"].get<bool>());
  CHECK_FALSE(nl["delta_h_concentrated"].get<bool>());
  const auto& ns = rep.sections["null_sample"];
  CHECK(ns["max_sample_difference"].get<double>() <= 1e-10);
  CHECK(ns["difference_norm"].get<double>() > 1e-6);
  CHECK(ns["p_opt_difference"].get<double>() <= 1e-10);
  CHECK(ns["concentration_f_tilde"].get<double>() >= 0.9 - 1e-12);

  try {
    run_witness(parse_config_string("schema_version = 1\n[grid]\nL = 16\n[region]\nshape = full\n"));
    FAIL("expected an infeasible witness");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
}

TEST_CASE("report json rejects non-finite values") {
  RunReport rep;
  rep.verb = "spectrum";
  rep.config = parse_config_string(kSmall);
  rep.sections["x"] = Json{{"a", 1.0}};
  CHECK_NOTHROW(report_json(rep));
  rep.sections["x"]["b"] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(report_json(rep), Error);
}

TEST_CASE("tool exit codes and output files") {
  const fs::path dir = scratch_dir("tool");
  write_file(dir / "ok.ini", kSmall + "[montecarlo]\ntrials = 20\nr_grid = 50\n");
  write_file(dir / "bad.ini", kSmall + "[grid2]\nL = 3\n");
  write_file(dir / "numerical.ini", kSmall + "[tolerances]\neig_residual = 1e-300\n");
  write_file(dir / "infeasible.ini", "schema_version = 1\n[grid]\nL = 16\n[region]\nshape = full\n");
  const auto run = [&](const std::string& args) {
    const std::string cmd = std::string(RELSAMP_TOOL_PATH) + " " + args + " > " +
                            (dir / "stdout.txt").string() + " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const std::string out = (dir / "out").string();
  CHECK(run("spectrum --config " + (dir / "ok.ini").string() + " --out " + out) == 0);
  CHECK(fs::exists(dir / "out" / "report.txt"));
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK(fs::exists(dir / "out" / "timings.json"));
  CHECK(fs::exists(dir / "out" / "eigenvalues.csv"));
  const std::string first = read_file(dir / "out" / "report.json");
  CHECK(run("spectrum --config " + (dir / "ok.ini").string() + " --out " + out + " --seed 1") == 0);
  CHECK(read_file(dir / "out" / "report.json") == first);
  CHECK(run("montecarlo --config " + (dir / "ok.ini").string() + " --out " + out +
            " --threads 2 --seed 7") == 0);
  CHECK(read_file(dir / "out" / "report.json").find("\"master_seed\": 7") != std::string::npos);

  CHECK(run("spectrum --config " + (dir / "bad.ini").string() + " --out " + out) == 2);
  CHECK(read_file(dir / "stderr.txt").find("[grid2]") != std::string::npos);
  CHECK(run("spectrum --config " + (dir / "missing.ini").string()) == 2);
  CHECK(run("spectrum") == 2);
  CHECK(run("frobnicate --config x") == 2);
  CHECK(run("spectrum --config " + (dir / "ok.ini").string() + " --threads 0") == 2);
  CHECK(run("spectrum --config " + (dir / "numerical.ini").string() + " --out " + out) == 3);
  CHECK(run("witness --config " + (dir / "infeasible.ini").string() + " --out " + out) == 4);
  CHECK(run("--help") == 0);
  fs::remove_all(dir);
}
