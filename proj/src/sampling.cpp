#include "relsamp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "parallel.hpp"
#include "relsamp/error.hpp"
#include "relsamp/seed.hpp"

namespace relsamp {
namespace {

constexpr std::size_t kAtomChunk = 1024;

void require_subspace(const EigenSystem& eigs, const char* where) {
  if (eigs.N() < 1) {
    throw Error(ErrorKind::InvalidParameter, std::string(where) + ": V_N is trivial (N = 0)");
  }
}

double require_measure(const TFRegion& region, const char* where) {
  const double measure = region.measure();
  if (!(measure > 0.0)) {
    throw Error(ErrorKind::InvalidRegion, std::string(where) + ": region is empty");
  }
  return measure;
}

}  // namespace

CMatrix subspace_sample_matrix(std::span<const TFPoint> points, const EigenSystem& eigs,
                               const Window& phi) {
  require_subspace(eigs, "subspace_sample_matrix");
  const int L = eigs.dim();
  if (phi.dim() != L) {
    throw Error(ErrorKind::InvalidDimension, "subspace_sample_matrix: dimension mismatch");
  }
  const auto basis = eigs.subspace_basis();
  const auto roots = unit_roots(L);
  CMatrix out(static_cast<Eigen::Index>(points.size()), eigs.N());
  for (std::size_t start = 0; start < points.size(); start += kAtomChunk) {
    const std::size_t stop = std::min(points.size(), start + kAtomChunk);
    CMatrix atoms(L, static_cast<Eigen::Index>(stop - start));
    for (std::size_t j = start; j < stop; ++j) {
      const TFPoint p = points[j];
      if (p.m < 0 || p.m >= L || p.n < 0 || p.n >= L) {
        throw Error(ErrorKind::InvalidDimension, "subspace_sample_matrix: point off the grid");
      }
      for (int t = 0; t < L; ++t) {
        atoms(t, static_cast<Eigen::Index>(j - start)) =
            phi[wrap_index(t - p.m, L)] *
            roots[static_cast<std::size_t>((static_cast<long long>(p.n) * t) % L)];
      }
    }
    out.middleRows(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(stop - start)) =
        atoms.adjoint() * basis;
  }
  return out;
}

TMatrix build_T_matrix(TFPoint lambda, const EigenSystem& eigs, const Window& phi) {
  const CMatrix row = subspace_sample_matrix(std::span(&lambda, 1), eigs, phi);
  const CVector v = row.row(0).transpose();
  return {v * v.adjoint(), lambda};
}

RVector expected_T(const EigenSystem& eigs, const TFRegion& region) {
  const double measure = require_measure(region, "expected_T");
  return eigs.eigenvalues().head(eigs.N()) / measure;
}

double centered_min_eigenvalue(const CMatrix& sample_rows, const RVector& expected_diagonal) {
  const auto r = sample_rows.rows();
  if (r < 1) {
    throw Error(ErrorKind::InvalidParameter, "centered_min_eigenvalue: no samples");
  }
  // M^H M = conj(sum_j T_j); conjugation leaves the spectrum unchanged.
  CMatrix centered = sample_rows.adjoint() * sample_rows / static_cast<double>(r);
  centered.diagonal() -= expected_diagonal.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(centered, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "centered_min_eigenvalue: eigensolver failed");
  }
  return solver.eigenvalues()[0];
}

double empirical_min_eigenvalue(const SampleSet& samples, const EigenSystem& eigs,
                                const TFRegion& region, const Window& phi) {
  if (samples.size() == 0) {
    throw Error(ErrorKind::InvalidParameter, "empirical_min_eigenvalue: r must be at least 1");
  }
  const CMatrix rows = subspace_sample_matrix(samples.points, eigs, phi);
  return centered_min_eigenvalue(rows, expected_T(eigs, region));
}

double tropp_tail(double N, double sigma2, double Bnorm, double t) {
  if (!(t >= 0.0) || !(sigma2 >= 0.0) || !(Bnorm > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "tropp_tail: need t >= 0, sigma2 >= 0, B > 0");
  }
  if (t == 0.0) return N;
  return N * std::exp(-(t * t / 2.0) / (sigma2 + Bnorm * t / 3.0));
}

TailParams TailParams::with_default_rate(double nu, double r, double omega_measure, double N,
                                         double eps1, double eps2) {
  TailParams p;
  p.nu = nu;
  p.r = r;
  p.omega_measure = omega_measure;
  p.N = N;
  p.eps1 = eps1;
  p.eps2 = eps2;
  p.a = 3.0 / omega_measure;
  return p;
}

void TailParams::validate() const {
  if (!(nu >= 0.0)) throw Error(ErrorKind::InvalidParameter, "TailParams: nu must be >= 0");
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidParameter, "TailParams: r must be >= 0");
  if (!(omega_measure > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "TailParams: |Omega| must be positive");
  }
  if (!(a > 1.0 / omega_measure)) {
    throw Error(ErrorKind::InvalidParameter, "TailParams: covering rate a must exceed 1/|Omega|");
  }
}

namespace {

double subspace_exponent(const TailParams& p) {
  return p.nu * p.nu * p.r / (p.omega_measure * (1.0 + p.nu / 3.0));
}

}  // namespace

double subspace_failure_bound(const TailParams& p) {
  p.validate();
  return p.N * std::exp(-subspace_exponent(p));
}

double covering_tail(const TailParams& p) {
  if (!(p.omega_measure > 0.0) || !(p.a > 1.0 / p.omega_measure)) {
    throw Error(ErrorKind::InvalidParameter, "covering_tail: need a > 1/|Omega|");
  }
  const double rate = p.a * std::log(p.a * p.omega_measure) - (p.a - 1.0 / p.omega_measure);
  return (p.omega_measure + p.eps1) * std::exp(-p.r * rate);
}

double success_probability(const TailParams& p) {
  p.validate();
  const double subspace = (p.omega_measure + p.eps2) * std::exp(-subspace_exponent(p));
  const double covering = (p.omega_measure + p.eps1) *
                          std::exp(-(p.r / p.omega_measure) * (3.0 * std::log(3.0) - 2.0));
  return 1.0 - subspace - covering;
}

std::size_t required_samples(double nu, double delta, double omega_measure, double eps2) {
  if (!(nu > 0.0) || !(delta > 0.0 && delta < 1.0) || !(omega_measure > 0.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "required_samples: need nu > 0, 0 < delta < 1, |Omega| > 0");
  }
  const double count = omega_measure + eps2;
  if (!(count > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "required_samples: |Omega| + eps2 must be positive");
  }
  const double threshold =
      omega_measure * (1.0 + nu / 3.0) / (nu * nu) * std::log(2.0 * count / delta);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(threshold)));
}

RegionSampleTable::RegionSampleTable(const TFRegion& region, const EigenSystem& eigs,
                                     const Window& phi)
    : region_(&region),
      rows_(subspace_sample_matrix(region.points(), eigs, phi)),
      expected_(expected_T(eigs, region)) {}

double RegionSampleTable::draw_statistic(std::size_t r, std::uint64_t seed) const {
  if (r == 0) throw Error(ErrorKind::InvalidParameter, "draw_statistic: r must be at least 1");
  // Same generator and distribution as uniform_sample(region, r, seed, false).
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, region_->point_count() - 1);
  CMatrix drawn(static_cast<Eigen::Index>(r), rows_.cols());
  for (std::size_t j = 0; j < r; ++j) {
    drawn.row(static_cast<Eigen::Index>(j)) = rows_.row(static_cast<Eigen::Index>(pick(rng)));
  }
  return centered_min_eigenvalue(drawn, expected_);
}

std::vector<double> monte_carlo_min_eigenvalues(const RegionSampleTable& table, int trials,
                                                std::size_t r, std::uint64_t master_seed,
                                                int threads) {
  if (trials < 1) {
    throw Error(ErrorKind::InvalidParameter, "monte_carlo: trials must be at least 1");
  }
  std::vector<double> stats(static_cast<std::size_t>(trials));
  detail::parallel_for(trials, threads, [&](int i) {
    stats[static_cast<std::size_t>(i)] =
        table.draw_statistic(r, derive_seed(master_seed, static_cast<std::uint64_t>(i)));
  });
  return stats;
}

double failure_frequency(std::span<const double> statistics, double nu, double omega_measure) {
  if (statistics.empty()) return 0.0;
  const double threshold = -nu / omega_measure;
  const auto failures = std::count_if(statistics.begin(), statistics.end(),
                                      [threshold](double s) { return s <= threshold; });
  return static_cast<double>(failures) / static_cast<double>(statistics.size());
}

double monte_carlo_failure_frequency(int trials, double nu, std::size_t r,
                                     const MonteCarloSetup& setup, std::uint64_t master_seed,
                                     int threads) {
  const RegionSampleTable table(setup.region, setup.eigs, setup.window);
  const auto stats = monte_carlo_min_eigenvalues(table, trials, r, master_seed, threads);
  return failure_frequency(stats, nu, setup.region.measure());
}

std::vector<std::size_t> monte_carlo_covering(const TFRegion& region, std::size_t r,
                                              int cell_px, int trials,
                                              std::uint64_t master_seed, int threads) {
  if (trials < 1) {
    throw Error(ErrorKind::InvalidParameter, "monte_carlo_covering: trials must be at least 1");
  }
  std::vector<std::size_t> n0(static_cast<std::size_t>(trials));
  detail::parallel_for(trials, threads, [&](int i) {
    const auto samples = uniform_sample(
        region, r, derive_seed(master_seed, static_cast<std::uint64_t>(i)), false);
    n0[static_cast<std::size_t>(i)] = covering_index(samples, cell_px).N0;
  });
  return n0;
}

double binomial_sigma(double frequency, int trials) {
  return std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(trials));
}

}  // namespace relsamp
