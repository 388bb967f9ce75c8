#pragma once

#include <cstddef>

#include "relsamp/regions.hpp"
#include "relsamp/tfcore.hpp"

namespace relsamp {

// Dense matrix of H = V* chi_Omega V, with entries
//   H(t,s) = (1/L) sum_{(m,n) in Omega} phi(t-m) conj(phi(s-m)) exp(2 pi i n (t-s) / L).
class LocalizationOperator {
 public:
  LocalizationOperator(CMatrix matrix, TFRegion region, Window window);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  const TFRegion& region() const { return region_; }
  const Window& window() const { return window_; }

  Signal apply(const Signal& f) const;
  double trace() const { return matrix_.trace().real(); }

 private:
  CMatrix matrix_;
  TFRegion region_;
  Window window_;
};

LocalizationOperator build_localization_operator(const TFRegion& region, const Window& phi);

// Full eigensystem with eigenvalues sorted non-increasing, orthonormal
// eigenvectors (columns), each with its largest-magnitude entry made real
// positive, and a spectral cut N = #{k : alpha_k >= gamma}.
class EigenSystem {
 public:
  EigenSystem(RVector eigenvalues, CMatrix eigenvectors, double gamma, double max_residual);

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  const RVector& eigenvalues() const { return eigenvalues_; }
  const CMatrix& eigenvectors() const { return eigenvectors_; }
  // 0-based: alpha(0) is the largest eigenvalue.
  double alpha(int k) const { return eigenvalues_[k]; }
  Signal eigenvector(int k) const { return Signal(eigenvectors_.col(k)); }

  int N() const { return N_; }
  double gamma() const { return gamma_; }
  // Columns spanning V_N.
  auto subspace_basis() const { return eigenvectors_.leftCols(N_); }

  // Largest ||H psi_k - alpha_k psi_k|| observed when the system was computed.
  double max_residual() const { return max_residual_; }

  EigenSystem with_cut(double gamma) const;

 private:
  RVector eigenvalues_;
  CMatrix eigenvectors_;
  double gamma_;
  int N_;
  double max_residual_;
};

EigenSystem eigendecompose(const LocalizationOperator& H, double gamma = 0.5,
                           double residual_tol = 1e-8);

// Largest N with alpha_N >= gamma (1-based), 0 if alpha_1 < gamma.
int choose_N(const EigenSystem& eigs, double gamma);

// #{k : alpha_k > level}.
std::size_t eigenvalue_count_above(const EigenSystem& eigs, double level);

struct ConcentrationValue {
  double value = 0.0;         // <H f, f>
  double norm_squared = 0.0;  // ||f||^2
  double epsilon = 0.0;       // 1 - value / ||f||^2

  double ratio() const { return value / norm_squared; }
  bool concentrated(double eps) const { return value >= (1.0 - eps) * norm_squared; }
};

// (1/L) sum_{lambda in Omega} |V_phi f(lambda)|^2.
ConcentrationValue concentration(const Signal& f, const TFRegion& region, const Window& phi);
// Quadratic form <H f, f> with the assembled operator.
ConcentrationValue concentration(const Signal& f, const LocalizationOperator& H);
// sum_k alpha_k |<f, psi_k>|^2 over the full eigensystem.
ConcentrationValue concentration(const Signal& f, const EigenSystem& eigs);

// Orthogonal projection onto V_N = span{psi_1..psi_N}.
Signal project_VN(const Signal& f, const EigenSystem& eigs);

// Eigenvalues above rank_tol are treated as nonzero.
inline constexpr double kRankTolerance = 1e-12;
int numerical_rank(const EigenSystem& eigs, double rank_tol = kRankTolerance);
// Component of f in ker H: f - sum_{alpha_k > rank_tol} <f, psi_k> psi_k.
Signal kernel_component(const Signal& f, const EigenSystem& eigs,
                        double rank_tol = kRankTolerance);

struct EigenCountInterval {
  double measure = 0.0;
  double double_integral = 0.0;  // int_Omega int_Omega |V_phi phi(z - z')|^2
  double radius = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double count) const { return count >= lower && count <= upper; }
};

// Interval [|Omega| - R, |Omega| + R] for #{k : alpha_k > 1 - delta} with
// R = max(1/delta, 1/(1-delta)) * | int_Omega int_Omega |V_phi phi(z-z')|^2 - |Omega| |.
// The double integral is evaluated through the mask autocorrelation.
EigenCountInterval eigenvalue_count_estimate(const TFRegion& region, const Window& phi,
                                             double delta);

}  // namespace relsamp
