#pragma once

#include <array>
#include <optional>

#include "relsamp/locop.hpp"
#include "relsamp/regions.hpp"
#include "relsamp/tfcore.hpp"

namespace relsamp {

// f = psi_M + delta h with f and psi_M (eps,phi)-concentrated while
// delta h is not, so the concentrated functions do not form a linear space.
struct NonlinearityWitness {
  Signal psi_M;
  Signal h;
  double delta = 0.0;
  Signal f;
  double eta = 0.0;
  double eps = 0.0;
  int M = 0;  // 0-based eigen index
  // h = sum_i c_i psi_{k_i} over exactly three indices; c_0 belongs to M.
  std::array<int, 3> indices{};
  std::array<double, 3> coefficients{};
};

// Requires alpha_M > 1 - eps and 1 < eta < 1/eps. Without an explicit M the
// largest index with alpha_M > 1 - eps is used.
NonlinearityWitness nonlinearity_witness(const EigenSystem& eigs, double eps, double eta,
                                         std::optional<int> M = std::nullopt);

// f and f_tilde = f + delta phi_perp, phi_perp orthogonal to every sampled atom,
// share all STFT samples on the set and are both (eps,phi)-concentrated.
struct AliasWitness {
  Signal f;
  Signal f_tilde;
  Signal phi_perp;
  double delta = 0.0;
  int complement_dim = 0;
  double phi_perp_concentration = 0.0;
};

// phi_perp is the most concentrated unit vector of span{pi(lambda_j)phi}^perp
// (top eigenvector of H compressed to that complement); delta is the largest
// value found by bisection on (0, 0.1 |f|] that keeps f_tilde concentrated.
AliasWitness null_sample_witness(const SampleSet& samples, const Window& phi, const Signal& f,
                                 const EigenSystem& eigs, double eps);

}  // namespace relsamp
