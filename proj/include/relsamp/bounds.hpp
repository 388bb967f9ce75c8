#pragma once

#include <cstddef>
#include <cstdint>

#include "relsamp/locop.hpp"
#include "relsamp/regions.hpp"
#include "relsamp/tfcore.hpp"

namespace relsamp {

struct BesselOptions {
  double rel_tol = 1e-10;  // stop when ||S x - rho x|| <= rel_tol * rho
  int max_iter = 2000;
  std::uint64_t seed = 0x6265737365ull;
};

struct BesselEstimate {
  double value = 0.0;
  int iterations = 0;
  bool dense_fallback = false;
};

// Largest eigenvalue of S = sum_j pi(lambda_j)phi (pi(lambda_j)phi)^*, i.e. the
// optimal B in sum_j |V_phi f(lambda_j)|^2 <= B |f|^2. Power iteration with a
// dense eigensolve on the smaller Gram side when it does not converge.
BesselEstimate estimate_bessel_bound(const SampleSet& samples, const Window& phi,
                                     const BesselOptions& options = {});
double exact_bessel_bound(const SampleSet& samples, const Window& phi);

// A = (r/|Omega|)(gamma - gamma eps/(1-gamma) - nu) - 2 B sqrt(eps/(1-gamma)).
double lemma_lower_bound_A(double r, double omega_measure, double gamma, double eps,
                           double nu, double B);

// A = (r/|Omega|)(1/2 - eps - nu - 6 sqrt(2) C_phi sqrt(eps)); throws unless
// (eps, nu) is admissible for C_phi.
double theorem_lower_bound_A(double r, double omega_measure, double eps, double nu,
                             double C_phi);
// Same formula without the admissibility check, for reporting.
double theorem_formula_A(double r, double omega_measure, double eps, double nu, double C_phi);

struct AdmissibleParams {
  double C_phi = 0.0;
  double eps_max = 0.0;  // 1 / (4 (1 + 6 sqrt(2) C_phi)^2)

  double nu_max(double eps) const;  // 1/2 - (1 + 6 sqrt(2) C_phi) sqrt(eps)
  bool admits(double eps, double nu) const;
};

AdmissibleParams admissible_params(double C_phi);

struct SamplingInequalityReport {
  std::size_t r = 0;
  double A = 0.0;
  double sample_energy = 0.0;  // sum_j |V_phi f(lambda_j)|^2
  double norm_squared = 0.0;
  double ratio = 0.0;          // sample_energy / |f|^2
  bool lower_holds = false;    // A |f|^2 <= sample_energy
  bool upper_holds = false;    // sample_energy <= r |f|^2
};

SamplingInequalityReport verify_sampling_inequality(const Signal& f, const SampleSet& samples,
                                                    const Window& phi, double A);

// Extreme eigenvalues of the Gram matrix of {P_{V_N} pi(lambda_j) phi} on V_N.
struct SubspaceFrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

SubspaceFrameBounds subspace_frame_bounds(const SampleSet& samples, const EigenSystem& eigs,
                                          const Window& phi);

struct BoundReport {
  double bessel_B = 0.0;
  std::size_t N0 = 0;
  int cell_px = 0;
  double C_phi = 0.0;
  double eps_max = 0.0;
  double nu_max = 0.0;
  bool theorem_admissible = false;
  double A_lemma = 0.0;
  double A_theorem = 0.0;
  bool lemma_vacuous = true;    // A_lemma <= 0
  bool theorem_vacuous = true;  // A_theorem <= 0 or inadmissible
  // parameters
  std::size_t r = 0;
  double omega_measure = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  double nu = 0.0;
};

BoundReport make_bound_report(const SampleSet& samples, const Window& phi,
                              const TFRegion& region, double gamma, double eps, double nu,
                              int cell_px);

}  // namespace relsamp
