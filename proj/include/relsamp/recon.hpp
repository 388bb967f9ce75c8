#pragma once

#include <cstdint>
#include <vector>

#include "relsamp/locop.hpp"
#include "relsamp/regions.hpp"
#include "relsamp/tfcore.hpp"

namespace relsamp {

// Normal equations of min_{p in V_N} sum_j |s_j - V_phi p(lambda_j)|^2 with
// p = sum_k c_k psi_k:
//   G_{kl} = sum_j conj(V_phi psi_k(lambda_j)) V_phi psi_l(lambda_j),
//   b_k    = sum_j conj(V_phi psi_k(lambda_j)) s_j.
struct NormalEquations {
  CMatrix G;
  CVector b;
  CMatrix sample_matrix;  // r x N, entries V_phi psi_k(lambda_j)
};

NormalEquations gram_and_rhs(const SampleSet& samples, const EigenSystem& eigs,
                             const Window& phi, const CVector& sample_values);

struct CgResult {
  CVector solution;
  int iterations = 0;
  bool converged = false;
  double relative_residual = 0.0;       // |G c - b| / |b|
  std::vector<double> residual_history;  // |G c_k - b| / |b|, k = 0..iterations
  // c_k^H G c_k - 2 Re(b^H c_k); decreases monotonically in exact arithmetic.
  std::vector<double> objective_history;
};

// Conjugate gradient on a Hermitian positive semidefinite system, started
// from zero. Stops when |G c - b| <= tol |b|; hitting max_iter is reported
// through `converged`, not thrown.
CgResult cg_solve(const CMatrix& G, const CVector& b, double tol, int max_iter);

struct ReconstructionOptions {
  double tol = 1e-12;
  int max_iter = 0;  // 0 selects 10 * N
};

struct ReconstructionResult {
  CVector coefficients;  // p_opt = sum_k c_k psi_k
  Signal p_opt;
  int iterations = 0;
  bool converged = false;
  double normal_residual = 0.0;  // relative residual of the normal equations
  double residual_norm = 0.0;    // sqrt(sum_j |V f(lambda_j) - V p_opt(lambda_j)|^2)
  double relative_error = 0.0;   // residual_norm / |f|
  double epsilon = 0.0;          // measured concentration defect of f
  double bessel_B = 0.0;
  double error_bound = 0.0;      // sqrt(B eps / (1 - gamma))
  std::vector<double> sampled_residual_history;
};

// V_phi f(lambda_j) for every sample point.
CVector sample_stft(const Signal& f, const SampleSet& samples, const Window& phi);

ReconstructionResult reconstruct(const Signal& f, const SampleSet& samples,
                                 const EigenSystem& eigs, const Window& phi,
                                 const TFRegion& region, const ReconstructionOptions& options = {});

// sqrt(B eps / (1 - gamma)).
double error_bound(double B, double eps, double gamma);

// Unit-norm f = sqrt(1-s) u + sqrt(s) v, u a random unit vector in the span of
// {psi_k : k < N, alpha_k >= 1 - eps/2}, v a random unit vector in the span of
// {psi_k : alpha_k < gamma}; s is found by bisection so that the spectral
// concentration equals 1 - eps.
Signal make_concentrated_test_function(const EigenSystem& eigs, double eps_target,
                                       std::uint64_t seed);

// Random unit vector in V_N.
Signal random_subspace_function(const EigenSystem& eigs, std::uint64_t seed);

}  // namespace relsamp
