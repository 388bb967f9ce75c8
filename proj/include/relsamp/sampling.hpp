#pragma once

// Random-matrix side of relevant sampling: rank-one matrices T_j built from
// sample points, their expectation, the centered minimum-eigenvalue statistic,
// the closed-form tail bounds, and Monte Carlo campaigns that test them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "relsamp/locop.hpp"
#include "relsamp/regions.hpp"
#include "relsamp/tfcore.hpp"

namespace relsamp {

// (T)_{kl} = <psi_k, pi(lambda) phi> conj(<psi_l, pi(lambda) phi>), k,l < N.
// For p = sum c_k psi_k one has |V_phi p(lambda)|^2 = c^T T conj(c).
struct TMatrix {
  CMatrix entries;
  TFPoint source_point;

  double trace() const { return entries.trace().real(); }
};

// Row j holds (V_phi psi_k(lambda_j))_{k < N}; equivalently A^H Psi_N where A
// has the atoms pi(lambda_j) phi as columns.
CMatrix subspace_sample_matrix(std::span<const TFPoint> points, const EigenSystem& eigs,
                               const Window& phi);

TMatrix build_T_matrix(TFPoint lambda, const EigenSystem& eigs, const Window& phi);

// Diagonal of E(T_j) = diag(alpha_1..alpha_N) / |Omega|.
RVector expected_T(const EigenSystem& eigs, const TFRegion& region);

// Smallest eigenvalue of (1/r) sum_j (T_j - E T_j).
double empirical_min_eigenvalue(const SampleSet& samples, const EigenSystem& eigs,
                                const TFRegion& region, const Window& phi);

// Same statistic from a precomputed sample matrix (rows as in subspace_sample_matrix).
double centered_min_eigenvalue(const CMatrix& sample_rows, const RVector& expected_diagonal);

// Matrix Bernstein tail N exp(-(t^2/2) / (sigma2 + B t / 3)).
double tropp_tail(double N, double sigma2, double Bnorm, double t);

struct TailParams {
  double nu = 0.0;
  double r = 1.0;
  double omega_measure = 1.0;
  double N = 1.0;    // dimension of V_N (|Omega| + eps2 in the theorem)
  double eps1 = 0.0; // covering excess: |Omega| + eps1 cells cover Omega
  double eps2 = 0.0; // eigenvalue-count excess
  double a = 0.0;    // covering rate, must exceed 1/|Omega|

  // Parameters with the default covering rate a = 3/|Omega|.
  static TailParams with_default_rate(double nu, double r, double omega_measure, double N,
                                      double eps1 = 0.0, double eps2 = 0.0);
  void validate() const;
};

// N exp(-nu^2 r / (|Omega| (1 + nu/3))). Raw value, not clamped to [0,1].
double subspace_failure_bound(const TailParams& p);

// (|Omega| + eps1) exp(-r (a ln(a |Omega|) - (a - 1/|Omega|))).
double covering_tail(const TailParams& p);

// 1 - (|Omega|+eps2) exp(-nu^2 r/(|Omega|(1+nu/3))) - (|Omega|+eps1) exp(-(r/|Omega|)(3 ln 3 - 2)).
// May be negative.
double success_probability(const TailParams& p);

// Smallest r >= 1 with r >= |Omega| (1 + nu/3) / nu^2 * ln(2 (|Omega| + eps2) / delta).
std::size_t required_samples(double nu, double delta, double omega_measure, double eps2);

// V_phi psi_k at every point of a region, with the expected diagonal, ready
// for repeated sampling.
class RegionSampleTable {
 public:
  RegionSampleTable(const TFRegion& region, const EigenSystem& eigs, const Window& phi);

  const TFRegion& region() const { return *region_; }
  const CMatrix& rows() const { return rows_; }
  const RVector& expected_diagonal() const { return expected_; }

  // Centered minimum eigenvalue for i.i.d. uniform draws with the given seed.
  double draw_statistic(std::size_t r, std::uint64_t seed) const;

 private:
  const TFRegion* region_;
  CMatrix rows_;
  RVector expected_;
};

// Per-trial centered minimum eigenvalue, trial i seeded with derive_seed(master_seed, i).
std::vector<double> monte_carlo_min_eigenvalues(const RegionSampleTable& table, int trials,
                                                std::size_t r, std::uint64_t master_seed,
                                                int threads = 1);

// Fraction of statistics at or below -nu/|Omega|.
double failure_frequency(std::span<const double> statistics, double nu, double omega_measure);

struct MonteCarloSetup {
  const TFRegion& region;
  const Window& window;
  const EigenSystem& eigs;
};

double monte_carlo_failure_frequency(int trials, double nu, std::size_t r,
                                     const MonteCarloSetup& setup, std::uint64_t master_seed,
                                     int threads = 1);

// Per-trial covering index N0 for r i.i.d. uniform draws from the region.
std::vector<std::size_t> monte_carlo_covering(const TFRegion& region, std::size_t r,
                                              int cell_px, int trials,
                                              std::uint64_t master_seed, int threads = 1);

// Binomial standard error sqrt(p (1 - p) / trials).
double binomial_sigma(double frequency, int trials);

}  // namespace relsamp
