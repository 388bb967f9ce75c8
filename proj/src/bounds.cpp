#include "relsamp/bounds.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "relsamp/error.hpp"
#include "relsamp/sampling.hpp"
#include "relsamp/seed.hpp"

namespace relsamp {
namespace {

const double kSixRootTwo = 6.0 * std::numbers::sqrt2;

CMatrix atom_matrix(const SampleSet& samples, const Window& phi) {
  const int L = phi.dim();
  if (samples.L != L) {
    throw Error(ErrorKind::InvalidDimension, "bessel bound: sample grid does not match window");
  }
  CMatrix atoms(L, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t j = 0; j < samples.size(); ++j) {
    atoms.col(static_cast<Eigen::Index>(j)) = tf_atom(phi, samples.points[j]).values();
  }
  return atoms;
}

double dense_top_eigenvalue(const CMatrix& atoms) {
  // S = A A^* and A^* A share their nonzero spectrum; use the smaller one.
  const CMatrix gram =
      atoms.rows() <= atoms.cols() ? CMatrix(atoms * atoms.adjoint()) : CMatrix(atoms.adjoint() * atoms);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "bessel bound: dense eigensolver failed");
  }
  return solver.eigenvalues()[solver.eigenvalues().size() - 1];
}

}  // namespace

BesselEstimate estimate_bessel_bound(const SampleSet& samples, const Window& phi,
                                     const BesselOptions& options) {
  if (samples.size() == 0) {
    throw Error(ErrorKind::InvalidParameter, "exact_bessel_bound: r must be at least 1");
  }
  const CMatrix atoms = atom_matrix(samples, phi);
  const int L = phi.dim();

  Rng rng(options.seed);
  std::normal_distribution<double> gauss;
  CVector x(L);
  for (int t = 0; t < L; ++t) x[t] = Complex(gauss(rng), gauss(rng));
  x.normalize();

  BesselEstimate out;
  for (int it = 1; it <= options.max_iter; ++it) {
    const CVector y = atoms * (atoms.adjoint() * x);
    const double rho = x.dot(y).real();
    const double residual = (y - rho * x).norm();
    out.iterations = it;
    if (rho > 0.0 && residual <= options.rel_tol * rho) {
      out.value = rho;
      return out;
    }
    const double ynorm = y.norm();
    if (ynorm == 0.0) break;
    x = y / ynorm;
  }
  out.value = dense_top_eigenvalue(atoms);
  out.dense_fallback = true;
  return out;
}

double exact_bessel_bound(const SampleSet& samples, const Window& phi) {
  return estimate_bessel_bound(samples, phi).value;
}

double lemma_lower_bound_A(double r, double omega_measure, double gamma, double eps,
                           double nu, double B) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "lemma_lower_bound_A: gamma must lie in (0,1)");
  }
  if (!(eps >= 0.0 && eps < 1.0 - gamma)) {
    throw Error(ErrorKind::InvalidParameter,
                "lemma_lower_bound_A: need 0 <= eps < 1 - gamma");
  }
  if (!(omega_measure > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "lemma_lower_bound_A: |Omega| must be positive");
  }
  const double spill = eps / (1.0 - gamma);
  return (r / omega_measure) * (gamma - gamma * spill - nu) - 2.0 * B * std::sqrt(spill);
}

double theorem_formula_A(double r, double omega_measure, double eps, double nu, double C_phi) {
  return (r / omega_measure) * (0.5 - eps - nu - kSixRootTwo * C_phi * std::sqrt(eps));
}

double theorem_lower_bound_A(double r, double omega_measure, double eps, double nu,
                             double C_phi) {
  if (!(omega_measure > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "theorem_lower_bound_A: |Omega| must be positive");
  }
  if (!admissible_params(C_phi).admits(eps, nu)) {
    throw Error(ErrorKind::InvalidParameter,
                "theorem_lower_bound_A: (eps, nu) outside the admissible range");
  }
  return theorem_formula_A(r, omega_measure, eps, nu, C_phi);
}

double AdmissibleParams::nu_max(double eps) const {
  return 0.5 - (1.0 + kSixRootTwo * C_phi) * std::sqrt(eps);
}

bool AdmissibleParams::admits(double eps, double nu) const {
  return eps >= 0.0 && eps < eps_max && nu >= 0.0 && nu < nu_max(eps);
}

AdmissibleParams admissible_params(double C_phi) {
  if (!(C_phi > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "admissible_params: C_phi must be positive");
  }
  const double c = 1.0 + kSixRootTwo * C_phi;
  return {C_phi, 1.0 / (4.0 * c * c)};
}

SamplingInequalityReport verify_sampling_inequality(const Signal& f, const SampleSet& samples,
                                                    const Window& phi, double A) {
  const double norm_squared = f.squared_norm();
  if (!(norm_squared > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "verify_sampling_inequality: zero signal");
  }
  SamplingInequalityReport out;
  out.r = samples.size();
  out.A = A;
  out.norm_squared = norm_squared;
  for (const auto& p : samples.points) out.sample_energy += std::norm(stft_point(f, phi, p));
  out.ratio = out.sample_energy / norm_squared;
  out.lower_holds = out.sample_energy >= A * norm_squared;
  // |V_phi f(lambda)| <= |f| |phi| exactly; allow rounding in the sum.
  out.upper_holds =
      out.sample_energy <= static_cast<double>(out.r) * norm_squared * (1.0 + 1e-12);
  return out;
}

SubspaceFrameBounds subspace_frame_bounds(const SampleSet& samples, const EigenSystem& eigs,
                                          const Window& phi) {
  const CMatrix rows = subspace_sample_matrix(samples.points, eigs, phi);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rows.adjoint() * rows, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "subspace_frame_bounds: eigensolver failed");
  }
  return {solver.eigenvalues()[0], solver.eigenvalues()[solver.eigenvalues().size() - 1]};
}

BoundReport make_bound_report(const SampleSet& samples, const Window& phi,
                              const TFRegion& region, double gamma, double eps, double nu,
                              int cell_px) {
  BoundReport out;
  out.r = samples.size();
  out.omega_measure = region.measure();
  out.gamma = gamma;
  out.eps = eps;
  out.nu = nu;
  out.cell_px = cell_px;
  out.bessel_B = exact_bessel_bound(samples, phi);
  out.N0 = covering_index(samples, cell_px).N0;
  out.C_phi = out.bessel_B / static_cast<double>(out.N0);
  const auto admissible = admissible_params(out.C_phi);
  out.eps_max = admissible.eps_max;
  out.nu_max = admissible.nu_max(eps);
  out.theorem_admissible = admissible.admits(eps, nu);
  const auto r = static_cast<double>(out.r);
  out.A_lemma = lemma_lower_bound_A(r, out.omega_measure, gamma, eps, nu, out.bessel_B);
  out.A_theorem = theorem_formula_A(r, out.omega_measure, eps, nu, out.C_phi);
  out.lemma_vacuous = !(out.A_lemma > 0.0);
  out.theorem_vacuous = !(out.theorem_admissible && out.A_theorem > 0.0);
  return out;
}

}  // namespace relsamp
