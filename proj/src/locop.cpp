#include "relsamp/locop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fft.hpp"
#include "relsamp/error.hpp"

namespace relsamp {
namespace {

// Eigenvalues of a PSD matrix that land slightly below zero through rounding.
constexpr double kNegativeClamp = 1e-10;

void fix_phase(CMatrix& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index best = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&best);
    const Complex pivot = vectors(best, k);
    const double magnitude = std::abs(pivot);
    if (magnitude > 0.0) {
      vectors.col(k) *= std::conj(pivot) / magnitude;
      vectors(best, k) = magnitude;
    }
  }
}

}  // namespace

LocalizationOperator::LocalizationOperator(CMatrix matrix, TFRegion region, Window window)
    : matrix_(std::move(matrix)), region_(std::move(region)), window_(std::move(window)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != region_.dim() ||
      region_.dim() != window_.dim()) {
    throw Error(ErrorKind::InvalidDimension, "LocalizationOperator: dimension mismatch");
  }
}

Signal LocalizationOperator::apply(const Signal& f) const {
  if (f.dim() != dim()) {
    throw Error(ErrorKind::InvalidDimension, "LocalizationOperator::apply: dimension mismatch");
  }
  return Signal(matrix_ * f.values());
}

LocalizationOperator build_localization_operator(const TFRegion& region, const Window& phi) {
  const int L = region.dim();
  if (phi.dim() != L) {
    throw Error(ErrorKind::InvalidDimension,
                "build_localization_operator: window length " + std::to_string(phi.dim()) +
                    " does not match grid size " + std::to_string(L));
  }
  // Column m of `rows` is the mask row chi(m, .); its backward DFT gives the
  // frequency sum W_m(d) = sum_{n:(m,n) in Omega} exp(2 pi i n d / L).
  CMatrix kernels(L, L);
  std::vector<int> active;
  for (int m = 0; m < L; ++m) {
    bool any = false;
    for (int n = 0; n < L; ++n) {
      const bool in = region.mask()[static_cast<std::size_t>(m) * L + n] != 0;
      kernels(n, m) = in ? 1.0 : 0.0;
      any = any || in;
    }
    if (any) active.push_back(m);
  }
  detail::dft_columns(kernels, detail::FftDirection::Backward);

  CMatrix H = CMatrix::Zero(L, L);
  CVector shifted(L);
  for (int m : active) {
    for (int t = 0; t < L; ++t) shifted[t] = phi[wrap_index(t - m, L)];
    const auto W = kernels.col(m);
    for (int s = 0; s < L; ++s) {
      const Complex cs = std::conj(shifted[s]);
      for (int t = 0; t < L; ++t) {
        H(t, s) += shifted[t] * cs * W[wrap_index(t - s, L)];
      }
    }
  }
  H /= static_cast<double>(L);
  CMatrix hermitian = 0.5 * (H + H.adjoint());
  return LocalizationOperator(std::move(hermitian), region, phi);
}

EigenSystem::EigenSystem(RVector eigenvalues, CMatrix eigenvectors, double gamma,
                         double max_residual)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      gamma_(gamma),
      N_(0),
      max_residual_(max_residual) {
  if (eigenvectors_.rows() != eigenvalues_.size() ||
      eigenvectors_.cols() != eigenvalues_.size()) {
    throw Error(ErrorKind::InvalidDimension, "EigenSystem: shape mismatch");
  }
  for (Eigen::Index k = 1; k < eigenvalues_.size(); ++k) {
    if (eigenvalues_[k] > eigenvalues_[k - 1]) {
      throw Error(ErrorKind::InvalidParameter, "EigenSystem: eigenvalues not sorted");
    }
  }
  N_ = choose_N(*this, gamma_);
}

EigenSystem EigenSystem::with_cut(double gamma) const {
  return EigenSystem(eigenvalues_, eigenvectors_, gamma, max_residual_);
}

EigenSystem eigendecompose(const LocalizationOperator& H, double gamma, double residual_tol) {
  const int L = H.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(H.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "eigendecompose: Hermitian eigensolver did not converge");
  }
  // Eigen sorts ascending; reverse into non-increasing order.
  RVector values = solver.eigenvalues().reverse();
  CMatrix vectors = solver.eigenvectors().rowwise().reverse();
  for (int k = 0; k < L; ++k) {
    if (values[k] < -kNegativeClamp) {
      throw Error(ErrorKind::Numerical,
                  "eigendecompose: eigenvalue " + std::to_string(values[k]) +
                      " is negative; operator is not positive semidefinite");
    }
    values[k] = std::max(values[k], 0.0);
  }
  fix_phase(vectors);

  const CMatrix residual = H.matrix() * vectors - vectors * values.asDiagonal();
  const double worst = residual.colwise().norm().maxCoeff();
  if (!(worst <= residual_tol)) {
    throw Error(ErrorKind::Numerical, "eigendecompose: residual " + std::to_string(worst) +
                                          " exceeds tolerance " +
                                          std::to_string(residual_tol));
  }
  return EigenSystem(std::move(values), std::move(vectors), gamma, worst);
}

int choose_N(const EigenSystem& eigs, double gamma) {
  int N = 0;
  while (N < eigs.dim() && eigs.alpha(N) >= gamma) ++N;
  return N;
}

std::size_t eigenvalue_count_above(const EigenSystem& eigs, double level) {
  return static_cast<std::size_t>((eigs.eigenvalues().array() > level).count());
}

namespace {

ConcentrationValue make_concentration(double value, double norm_squared) {
  if (!(norm_squared > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "concentration: undefined for the zero signal");
  }
  return {value, norm_squared, 1.0 - value / norm_squared};
}

}  // namespace

ConcentrationValue concentration(const Signal& f, const TFRegion& region, const Window& phi) {
  if (f.dim() != region.dim()) {
    throw Error(ErrorKind::InvalidDimension, "concentration: dimension mismatch");
  }
  const double norm_squared = f.squared_norm();
  if (!(norm_squared > 0.0)) return make_concentration(0.0, norm_squared);
  const TFMatrix V = stft(f, phi);
  double sum = 0.0;
  for (const auto& p : region.points()) sum += std::norm(V(p));
  return make_concentration(sum / region.dim(), norm_squared);
}

ConcentrationValue concentration(const Signal& f, const LocalizationOperator& H) {
  if (f.dim() != H.dim()) {
    throw Error(ErrorKind::InvalidDimension, "concentration: dimension mismatch");
  }
  const double value = f.values().dot(H.matrix() * f.values()).real();
  return make_concentration(value, f.squared_norm());
}

ConcentrationValue concentration(const Signal& f, const EigenSystem& eigs) {
  if (f.dim() != eigs.dim()) {
    throw Error(ErrorKind::InvalidDimension, "concentration: dimension mismatch");
  }
  const CVector coeffs = eigs.eigenvectors().adjoint() * f.values();
  const double value = (eigs.eigenvalues().array() * coeffs.array().abs2()).sum();
  return make_concentration(value, f.squared_norm());
}

Signal project_VN(const Signal& f, const EigenSystem& eigs) {
  if (eigs.N() < 1) {
    throw Error(ErrorKind::InvalidParameter, "project_VN: V_N is trivial (N = 0)");
  }
  if (f.dim() != eigs.dim()) {
    throw Error(ErrorKind::InvalidDimension, "project_VN: dimension mismatch");
  }
  const auto basis = eigs.subspace_basis();
  return Signal(basis * (basis.adjoint() * f.values()));
}

int numerical_rank(const EigenSystem& eigs, double rank_tol) {
  return static_cast<int>(eigenvalue_count_above(eigs, rank_tol));
}

Signal kernel_component(const Signal& f, const EigenSystem& eigs, double rank_tol) {
  if (f.dim() != eigs.dim()) {
    throw Error(ErrorKind::InvalidDimension, "kernel_component: dimension mismatch");
  }
  const auto range = eigs.eigenvectors().leftCols(numerical_rank(eigs, rank_tol));
  return Signal(f.values() - range * (range.adjoint() * f.values()));
}

EigenCountInterval eigenvalue_count_estimate(const TFRegion& region, const Window& phi,
                                             double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "eigenvalue_count_estimate: delta must lie in (0,1)");
  }
  const int L = region.dim();
  if (phi.dim() != L) {
    throw Error(ErrorKind::InvalidDimension, "eigenvalue_count_estimate: dimension mismatch");
  }
  // A(d) = #{z in Omega : z - d in Omega} via |DFT(chi)|^2, rounded to integers.
  CMatrix grid(L, L);
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      grid(m, n) = region.mask()[static_cast<std::size_t>(m) * L + n] ? 1.0 : 0.0;
    }
  }
  detail::dft_2d(grid, detail::FftDirection::Forward);
  grid = grid.cwiseAbs2().cast<Complex>();
  detail::dft_2d(grid, detail::FftDirection::Backward);
  const double scale = static_cast<double>(L) * L;

  const TFMatrix ambiguity = stft(phi.signal(), phi);
  double sum = 0.0;
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      const double overlap = std::round(grid(m, n).real() / scale);
      if (overlap > 0.0) sum += overlap * std::norm(ambiguity(m, n));
    }
  }
  EigenCountInterval out;
  out.measure = region.measure();
  out.double_integral = sum / scale;
  out.radius = std::max(1.0 / delta, 1.0 / (1.0 - delta)) *
               std::abs(out.double_integral - out.measure);
  out.lower = out.measure - out.radius;
  out.upper = out.measure + out.radius;
  return out;
}

}  // namespace relsamp
