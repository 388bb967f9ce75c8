#include "relsamp/recon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relsamp/bounds.hpp"
#include "relsamp/error.hpp"
#include "relsamp/sampling.hpp"
#include "relsamp/seed.hpp"

namespace relsamp {
namespace {

CVector random_unit_combination(const CMatrix& basis, const std::vector<int>& columns, Rng& rng) {
  std::normal_distribution<double> gauss;
  CVector coeffs = CVector::Zero(basis.cols());
  for (int k : columns) coeffs[k] = Complex(gauss(rng), gauss(rng));
  coeffs.normalize();
  return basis * coeffs;
}

}  // namespace

NormalEquations gram_and_rhs(const SampleSet& samples, const EigenSystem& eigs,
                             const Window& phi, const CVector& sample_values) {
  if (samples.size() == 0) {
    throw Error(ErrorKind::InvalidParameter, "gram_and_rhs: r must be at least 1");
  }
  if (static_cast<std::size_t>(sample_values.size()) != samples.size()) {
    throw Error(ErrorKind::InvalidDimension, "gram_and_rhs: one sample value per point required");
  }
  NormalEquations out;
  out.sample_matrix = subspace_sample_matrix(samples.points, eigs, phi);
  out.G = out.sample_matrix.adjoint() * out.sample_matrix;
  out.G = 0.5 * (out.G + out.G.adjoint()).eval();
  out.b = out.sample_matrix.adjoint() * sample_values;
  return out;
}

CgResult cg_solve(const CMatrix& G, const CVector& b, double tol, int max_iter) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "cg_solve: tol must be positive");
  if (G.rows() != G.cols() || G.rows() != b.size()) {
    throw Error(ErrorKind::InvalidDimension, "cg_solve: shape mismatch");
  }
  CgResult out;
  out.solution = CVector::Zero(b.size());
  const double bnorm = b.norm();
  out.residual_history.push_back(bnorm > 0.0 ? 1.0 : 0.0);
  out.objective_history.push_back(0.0);
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  CVector residual = b;
  CVector direction = residual;
  double rr = residual.squaredNorm();
  for (int it = 1; it <= max_iter; ++it) {
    const CVector Gd = G * direction;
    const double curvature = direction.dot(Gd).real();
    if (!(curvature > 0.0)) break;  // b has no component left in range(G)
    const double step = rr / curvature;
    out.solution += step * direction;
    residual -= step * Gd;
    const double rr_next = residual.squaredNorm();
    out.iterations = it;
    out.residual_history.push_back(std::sqrt(rr_next) / bnorm);
    out.objective_history.push_back(
        out.solution.dot(G * out.solution).real() - 2.0 * b.dot(out.solution).real());
    if (std::sqrt(rr_next) <= tol * bnorm) {
      out.converged = true;
      break;
    }
    direction = residual + (rr_next / rr) * direction;
    rr = rr_next;
  }
  out.relative_residual = (G * out.solution - b).norm() / bnorm;
  out.converged = out.converged || out.relative_residual <= tol;
  return out;
}

CVector sample_stft(const Signal& f, const SampleSet& samples, const Window& phi) {
  CVector values(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t j = 0; j < samples.size(); ++j) {
    values[static_cast<Eigen::Index>(j)] = stft_point(f, phi, samples.points[j]);
  }
  return values;
}

double error_bound(double B, double eps, double gamma) {
  if (!(eps >= 0.0 && eps < 1.0) || !(gamma > 0.0 && gamma < 1.0) || !(B >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "error_bound: need 0 <= eps < 1, 0 < gamma < 1, B >= 0");
  }
  return std::sqrt(B * eps / (1.0 - gamma));
}

ReconstructionResult reconstruct(const Signal& f, const SampleSet& samples,
                                 const EigenSystem& eigs, const Window& phi,
                                 const TFRegion& region, const ReconstructionOptions& options) {
  const double fnorm = f.norm();
  if (!(fnorm > 0.0)) throw Error(ErrorKind::InvalidParameter, "reconstruct: zero signal");
  const CVector samples_f = sample_stft(f, samples, phi);
  const NormalEquations system = gram_and_rhs(samples, eigs, phi, samples_f);
  const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * eigs.N();
  const CgResult cg = cg_solve(system.G, system.b, options.tol, max_iter);

  ReconstructionResult out;
  out.coefficients = cg.solution;
  out.p_opt = Signal(eigs.subspace_basis() * cg.solution);
  out.iterations = cg.iterations;
  out.converged = cg.converged;
  out.normal_residual = cg.relative_residual;
  out.residual_norm = (samples_f - system.sample_matrix * cg.solution).norm();
  out.relative_error = out.residual_norm / fnorm;
  // |s - M c|^2 = |s|^2 + c^H G c - 2 Re(b^H c).
  const double base = samples_f.squaredNorm();
  for (double objective : cg.objective_history) {
    out.sampled_residual_history.push_back(std::sqrt(std::max(0.0, base + objective)));
  }
  out.epsilon = std::max(0.0, concentration(f, region, phi).epsilon);
  out.bessel_B = exact_bessel_bound(samples, phi);
  out.error_bound = error_bound(out.bessel_B, std::min(out.epsilon, std::nextafter(1.0, 0.0)),
                                eigs.gamma());
  return out;
}

Signal make_concentrated_test_function(const EigenSystem& eigs, double eps_target,
                                       std::uint64_t seed) {
  if (!(eps_target > 0.0 && eps_target < 1.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "make_concentrated_test_function: eps must lie in (0,1)");
  }
  std::vector<int> top;
  for (int k = 0; k < eigs.N(); ++k) {
    if (eigs.alpha(k) >= 1.0 - eps_target / 2.0) top.push_back(k);
  }
  std::vector<int> tail;
  for (int k = eigs.N(); k < eigs.dim(); ++k) {
    if (eigs.alpha(k) < eigs.gamma()) tail.push_back(k);
  }
  if (top.empty() || tail.empty()) {
    throw Error(ErrorKind::Infeasible, "make_concentrated_test_function: eps = " +
                                           std::to_string(eps_target) +
                                           " is not reachable with this eigensystem");
  }
  Rng rng(seed);
  const CVector u = random_unit_combination(eigs.eigenvectors(), top, rng);
  const CVector v = random_unit_combination(eigs.eigenvectors(), tail, rng);
  const double target = 1.0 - eps_target;

  auto mix = [&](double s) { return Signal(std::sqrt(1.0 - s) * u + std::sqrt(s) * v); };
  auto level = [&](double s) { return concentration(mix(s), eigs).ratio(); };
  if (!(level(1.0) < target)) {
    throw Error(ErrorKind::Infeasible,
                "make_concentrated_test_function: eps target below the tail concentration");
  }
  double lo = 0.0;  // level(lo) >= target
  double hi = 1.0;  // level(hi) < target
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (level(mid) >= target ? lo : hi) = mid;
  }
  const double s = std::abs(level(lo) - target) <= std::abs(level(hi) - target) ? lo : hi;
  return mix(s);
}

Signal random_subspace_function(const EigenSystem& eigs, std::uint64_t seed) {
  if (eigs.N() < 1) {
    throw Error(ErrorKind::InvalidParameter, "random_subspace_function: N = 0");
  }
  std::vector<int> columns(static_cast<std::size_t>(eigs.N()));
  for (int k = 0; k < eigs.N(); ++k) columns[static_cast<std::size_t>(k)] = k;
  Rng rng(seed);
  return Signal(random_unit_combination(eigs.eigenvectors(), columns, rng));
}

}  // namespace relsamp
