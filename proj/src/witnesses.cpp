#include "relsamp/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "relsamp/error.hpp"

namespace relsamp {

NonlinearityWitness nonlinearity_witness(const EigenSystem& eigs, double eps, double eta,
                                         std::optional<int> M) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "nonlinearity_witness: eps must lie in (0,1)");
  }
  if (!(eta > 1.0 && eta < 1.0 / eps)) {
    throw Error(ErrorKind::InvalidParameter, "nonlinearity_witness: need 1 < eta < 1/eps");
  }
  if (eigs.dim() < 3) {
    throw Error(ErrorKind::Infeasible, "nonlinearity_witness: need at least three eigenpairs");
  }
  const double level = 1.0 - eps;
  int index = 0;
  if (M) {
    index = *M;
    if (index < 0 || index >= eigs.dim() || !(eigs.alpha(index) > level)) {
      throw Error(ErrorKind::Infeasible,
                  "nonlinearity_witness: alpha_M must exceed 1 - eps for M = " +
                      std::to_string(index));
    }
  } else {
    const auto above = static_cast<int>(eigenvalue_count_above(eigs, level));
    if (above == 0) {
      throw Error(ErrorKind::Infeasible, "nonlinearity_witness: no eigenvalue exceeds 1 - eps");
    }
    index = above - 1;
  }
  const double alpha_M = eigs.alpha(index);

  // Mass on psi_M is half its admissible maximum; the rest goes to the most and
  // the least concentrated remaining eigenfunctions so that |h| = 1 and
  // <H h, h> = 1 - eta eps.
  const int hi = index == 0 ? 1 : 0;
  const int lo = index == eigs.dim() - 1 ? eigs.dim() - 2 : eigs.dim() - 1;
  const double alpha_hi = eigs.alpha(hi);
  const double alpha_lo = eigs.alpha(lo);
  const double c_M = level / (2.0 * alpha_M);
  const double mass = 1.0 - c_M * c_M;
  const double energy = 1.0 - eta * eps - alpha_M * c_M * c_M;
  if (!(alpha_hi > alpha_lo)) {
    throw Error(ErrorKind::Infeasible, "nonlinearity_witness: degenerate spectrum");
  }
  const double w_hi = (energy - alpha_lo * mass) / (alpha_hi - alpha_lo);
  const double w_lo = mass - w_hi;
  if (w_hi < 0.0 || w_lo < 0.0) {
    throw Error(ErrorKind::Infeasible,
                "nonlinearity_witness: no three-term h meets the energy constraint for eta = " +
                    std::to_string(eta));
  }

  NonlinearityWitness out;
  out.M = index;
  out.eps = eps;
  out.eta = eta;
  out.indices = {index, hi, lo};
  out.coefficients = {c_M, std::sqrt(w_hi), std::sqrt(w_lo)};
  CVector h = CVector::Zero(eigs.dim());
  for (std::size_t i = 0; i < 3; ++i) {
    h += out.coefficients[i] * eigs.eigenvectors().col(out.indices[i]);
  }
  out.psi_M = eigs.eigenvector(index);
  out.h = Signal(h);
  out.delta = 2.0 * c_M * (alpha_M - level) / (eps * (eta - 1.0));
  out.f = out.psi_M + Complex(out.delta) * out.h;

  const auto cf = concentration(out.f, eigs);
  const auto ch = concentration(Complex(out.delta) * out.h, eigs);
  if (!cf.concentrated(eps) || ch.concentrated(eps)) {
    throw Error(ErrorKind::Numerical,
                "nonlinearity_witness: constructed witness failed its concentration checks");
  }
  return out;
}

AliasWitness null_sample_witness(const SampleSet& samples, const Window& phi, const Signal& f,
                                 const EigenSystem& eigs, double eps) {
  const int L = eigs.dim();
  if (f.dim() != L || phi.dim() != L || samples.L != L) {
    throw Error(ErrorKind::InvalidDimension, "null_sample_witness: dimension mismatch");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "null_sample_witness: eps must lie in (0,1)");
  }
  const auto base = concentration(f, eigs);
  if (!(base.value > (1.0 - eps) * base.norm_squared)) {
    throw Error(ErrorKind::Infeasible,
                "null_sample_witness: f is not strictly (eps,phi)-concentrated");
  }

  CMatrix atoms(L, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t j = 0; j < samples.size(); ++j) {
    atoms.col(static_cast<Eigen::Index>(j)) = tf_atom(phi, samples.points[j]).values();
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(atoms);
  const auto rank = static_cast<int>(qr.rank());
  if (rank >= L) {
    throw Error(ErrorKind::Infeasible,
                "null_sample_witness: sampled atoms span C^L, no orthogonal complement");
  }
  const CMatrix Q = qr.householderQ() * CMatrix::Identity(L, L);
  const CMatrix complement = Q.rightCols(L - rank);

  const CMatrix H =
      eigs.eigenvectors() * eigs.eigenvalues().cast<Complex>().asDiagonal() *
      eigs.eigenvectors().adjoint();
  CMatrix compressed = complement.adjoint() * H * complement;
  compressed = 0.5 * (compressed + compressed.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(compressed);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "null_sample_witness: eigensolver failed");
  }
  const CVector top = solver.eigenvectors().col(solver.eigenvectors().cols() - 1);
  const Signal phi_perp(complement * top / (complement * top).norm());

  auto stays_concentrated = [&](double delta) {
    return concentration(f + Complex(delta) * phi_perp, eigs).concentrated(eps);
  };
  double delta = 0.1 * f.norm();
  if (!stays_concentrated(delta)) {
    double lo = 0.0;
    double hi = delta;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (stays_concentrated(mid) ? lo : hi) = mid;
    }
    delta = lo;
  }
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::Infeasible, "null_sample_witness: no positive delta keeps f concentrated");
  }

  AliasWitness out;
  out.f = f;
  out.phi_perp = phi_perp;
  out.delta = delta;
  out.f_tilde = f + Complex(delta) * phi_perp;
  out.complement_dim = L - rank;
  out.phi_perp_concentration = solver.eigenvalues()[solver.eigenvalues().size() - 1];
  return out;
}

}  // namespace relsamp
