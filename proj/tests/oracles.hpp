#pragma once
// Naive reference implementations and random generators shared by the unit tests.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "relsamp/locop.hpp"
#include "relsamp/regions.hpp"
#include "relsamp/tfcore.hpp"

namespace oracle {

using relsamp::CMatrix;
using relsamp::Complex;
using relsamp::CVector;

inline Complex expi(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline int wrap(long long k, int L) {
  const long long r = k % L;
  return static_cast<int>(r < 0 ? r + L : r);
}

inline CVector random_vector(int L, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(L);
  for (int t = 0; t < L; ++t) v[t] = Complex(g(rng), g(rng));
  return v;
}

inline relsamp::Signal random_signal(int L, std::mt19937_64& rng) {
  return relsamp::Signal(random_vector(L, rng));
}

inline relsamp::Signal random_unit_signal(int L, std::mt19937_64& rng) {
  CVector v = random_vector(L, rng);
  v.normalize();
  return relsamp::Signal(v);
}

inline relsamp::Window random_window(int L, std::mt19937_64& rng) {
  return relsamp::Window::normalized(random_signal(L, rng));
}

// V(m,n) = sum_t f(t) conj(phi(t-m)) exp(-2 pi i n t / L), double loop per entry.
inline CMatrix naive_stft(const CVector& f, const CVector& phi) {
  const int L = static_cast<int>(f.size());
  CMatrix V(L, L);
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      Complex acc = 0.0;
      for (int t = 0; t < L; ++t) {
        acc += f[t] * std::conj(phi[wrap(t - m, L)]) *
               expi(-2.0 * std::numbers::pi * n * t / L);
      }
      V(m, n) = acc;
    }
  }
  return V;
}

// g(t) = (1/L) sum_{m,n} F(m,n) phi(t-m) exp(2 pi i n t / L).
inline CVector naive_adjoint(const CMatrix& F, const CVector& phi) {
  const int L = static_cast<int>(phi.size());
  CVector g = CVector::Zero(L);
  for (int t = 0; t < L; ++t) {
    for (int m = 0; m < L; ++m) {
      for (int n = 0; n < L; ++n) {
        g[t] += F(m, n) * phi[wrap(t - m, L)] * expi(2.0 * std::numbers::pi * n * t / L);
      }
    }
    g[t] /= static_cast<double>(L);
  }
  return g;
}

// Entry formula of the localization operator, summed point by point.
inline CMatrix naive_localization(const relsamp::TFRegion& region, const CVector& phi) {
  const int L = region.dim();
  CMatrix H = CMatrix::Zero(L, L);
  for (const auto& p : region.points()) {
    for (int t = 0; t < L; ++t) {
      for (int s = 0; s < L; ++s) {
        H(t, s) += phi[wrap(t - p.m, L)] * std::conj(phi[wrap(s - p.m, L)]) *
                   expi(2.0 * std::numbers::pi * p.n * (t - s) / L);
      }
    }
  }
  return H / static_cast<double>(L);
}

// Points (m,n) with cyclic distance to the center at most radius, by direct scan.
inline long long lattice_disk_count(int L, int cm, int cn, double radius) {
  long long count = 0;
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      int dm = std::abs(m - cm);
      int dn = std::abs(n - cn);
      dm = std::min(dm, L - dm);
      dn = std::min(dn, L - dn);
      if (static_cast<double>(dm) * dm + static_cast<double>(dn) * dn <= radius * radius) ++count;
    }
  }
  return count;
}

// Random region: union of a few random disks, never empty.
inline relsamp::TFRegion random_region(int L, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coord(0, L - 1);
  std::uniform_real_distribution<double> radius(1.0, L / 4.0);
  std::uniform_int_distribution<int> pieces(1, 3);
  relsamp::TFRegion region = relsamp::TFRegion::empty(L);
  const int k = pieces(rng);
  for (int i = 0; i < k; ++i) {
    region = relsamp::region_union(
        region, relsamp::disk_region(L, {coord(rng), coord(rng)}, radius(rng)));
  }
  return region;
}

// Random mask with each point kept with probability p.
inline relsamp::TFRegion random_mask(int L, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(L) * L);
  for (auto& v : mask) v = keep(rng) ? 1 : 0;
  mask[0] = 1;
  return relsamp::TFRegion(L, std::move(mask));
}

}  // namespace oracle
