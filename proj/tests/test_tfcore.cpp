#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "relsamp/error.hpp"
#include "relsamp/tfcore.hpp"

using namespace relsamp;

namespace {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("signal rejects empty and non-finite input") {
  CHECK_THROWS_AS(Signal{CVector()}, Error);
  CVector bad = CVector::Zero(4);
  bad[2] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(Signal{bad}, Error);
  CHECK(Signal::zeros(5).dim() == 5);
}

TEST_CASE("window requires unit norm") {
  CVector v = CVector::Zero(8);
  v[0] = 2.0;
  CHECK_THROWS_AS(Window{Signal(v)}, Error);
  CHECK(Window::normalized(Signal(v)).signal().norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gaussian window: norm, symmetry and direct periodization") {
  CHECK_THROWS_AS(make_gaussian_window(3), Error);
  for (int L : {4, 16, 31, 120, 480}) {
    const Window phi = make_gaussian_window(L);
    CHECK(std::abs(phi.signal().norm() - 1.0) <= 1e-12);
    for (int t = 0; t < L; ++t) {
      CHECK(phi[t] == phi[(L - t) % L]);
      CHECK(phi[t].imag() == 0.0);
    }
  }
  // Independent evaluation of the periodized sum at L = 16.
  const int L = 16;
  CVector direct(L);
  for (int t = 0; t < L; ++t) {
    double acc = 0.0;
    for (int k = -20; k <= 20; ++k) {
      const double x = t + static_cast<double>(k) * L;
      acc += std::exp(-std::numbers::pi * x * x / L);
    }
    direct[t] = acc;
  }
  direct.normalize();
  CHECK(max_abs(direct - make_gaussian_window(L).values()) <= 1e-15);
}

TEST_CASE("tf_shift: identity, unitarity and hand-evaluated delta") {
  std::mt19937_64 rng(11);
  const Signal f = oracle::random_signal(24, rng);
  CHECK(max_abs(tf_shift(f, {0, 0}).values() - f.values()) == 0.0);
  for (int i = 0; i < 20; ++i) {
    std::uniform_int_distribution<int> c(0, 23);
    CHECK(tf_shift(f, {c(rng), c(rng)}).norm() == doctest::Approx(f.norm()).epsilon(1e-13));
  }
  CVector d = CVector::Zero(8);
  d[0] = 1.0;
  const Signal shifted = tf_shift(Signal(d), {3, 2});
  for (int t = 0; t < 8; ++t) {
    const Complex expected = t == 3 ? oracle::expi(2.0 * std::numbers::pi * 2 * t / 8) : 0.0;
    CHECK(std::abs(shifted[t] - expected) <= 1e-15);
  }
}

TEST_CASE("stft matches the naive inner-product oracle") {
  std::mt19937_64 rng(12);
  for (int L : {8, 13, 32}) {
    const Signal f = oracle::random_signal(L, rng);
    const Window phi = oracle::random_window(L, rng);
    const CMatrix V = stft(f, phi).values();
    const CMatrix naive = oracle::naive_stft(f.values(), phi.values());
    CHECK(max_abs(V - naive) <= 1e-12 * std::max(1.0, max_abs(naive)));
  }
}

TEST_CASE("stft trivial cases") {
  const int L = 16;
  const Window phi = make_gaussian_window(L);
  CHECK(std::abs(stft(phi.signal(), phi)(0, 0) - 1.0) <= 1e-14);
  CVector d = CVector::Zero(L);
  d[0] = 1.0;
  const TFMatrix V = stft(Signal(d), phi);
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) {
      CHECK(std::abs(V(m, n) - std::conj(phi[(L - m) % L])) <= 1e-15);
    }
  }
}

TEST_CASE("property: Parseval on random signals and windows") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> dim(4, 40);
    const int L = dim(rng);
    const Signal f = oracle::random_signal(L, rng);
    const Window phi = oracle::random_window(L, rng);
    const double energy = stft(f, phi).energy();
    CHECK(std::abs(energy - f.squared_norm()) <= 1e-10 * f.squared_norm());
  }
}

TEST_CASE("property: covariance |V(pi(mu) f)(lambda)| = |V f(lambda - mu)|") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> dim(4, 28);
    const int L = dim(rng);
    std::uniform_int_distribution<int> c(0, L - 1);
    const Signal f = oracle::random_signal(L, rng);
    const Window phi = oracle::random_window(L, rng);
    const TFPoint mu{c(rng), c(rng)};
    const CMatrix a = stft(tf_shift(f, mu), phi).values().cwiseAbs().cast<Complex>();
    const CMatrix b = stft(f, phi).values().cwiseAbs().cast<Complex>();
    double worst = 0.0;
    for (int m = 0; m < L; ++m) {
      for (int n = 0; n < L; ++n) {
        worst = std::max(worst, std::abs(a(m, n) - b(wrap_index(m - mu.m, L),
                                                     wrap_index(n - mu.n, L))));
      }
    }
    CHECK(worst <= 1e-10 * std::max(1.0, f.norm()));
  }
}

TEST_CASE("property: stft and stft_adjoint are adjoint under the grid measure") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> dim(4, 30);
    const int L = dim(rng);
    const Signal f = oracle::random_signal(L, rng);
    const Window phi = oracle::random_window(L, rng);
    CMatrix F(L, L);
    for (int m = 0; m < L; ++m) F.row(m) = oracle::random_vector(L, rng).transpose();
    const Complex lhs = (stft(f, phi).values().array() * F.array().conjugate()).sum() /
                        static_cast<double>(L);
    const Complex rhs = inner(f, stft_adjoint(TFMatrix(F), phi));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("stft_adjoint: inversion, zero input and naive oracle") {
  std::mt19937_64 rng(16);
  const int L = 8;
  const Signal f = oracle::random_signal(L, rng);
  const Window phi = oracle::random_window(L, rng);
  CHECK(max_abs(stft_adjoint(stft(f, phi), phi).values() - f.values()) <= 1e-10);
  CHECK(stft_adjoint(TFMatrix(CMatrix::Zero(L, L)), phi).norm() == 0.0);
  CMatrix F(L, L);
  for (int m = 0; m < L; ++m) F.row(m) = oracle::random_vector(L, rng).transpose();
  CHECK(max_abs(stft_adjoint(TFMatrix(F), phi).values() -
                oracle::naive_adjoint(F, phi.values())) <= 1e-12);
}

TEST_CASE("stft_point matches the full transform and is bounded by |f|") {
  std::mt19937_64 rng(17);
  const int L = 32;
  const Signal f = oracle::random_signal(L, rng);
  const Window phi = make_gaussian_window(L);
  const TFMatrix V = stft(f, phi);
  std::uniform_int_distribution<int> c(0, L - 1);
  for (int i = 0; i < 20; ++i) {
    const TFPoint p{c(rng), c(rng)};
    const Complex v = stft_point(f, phi, p);
    CHECK(std::abs(v - V(p)) <= 1e-12 * f.norm());
    CHECK(std::abs(v) <= f.norm() * (1.0 + 1e-14));
  }
  CHECK(std::abs(stft_point(phi.signal(), phi, {0, 0}) - 1.0) <= 1e-14);
}

TEST_CASE("dimension mismatches are rejected") {
  std::mt19937_64 rng(18);
  const Signal f = oracle::random_signal(8, rng);
  const Window phi = make_gaussian_window(16);
  CHECK_THROWS_AS(stft(f, phi), Error);
  CHECK_THROWS_AS(stft_point(f, phi, {0, 0}), Error);
  CHECK_THROWS_AS(tf_atom(phi, {16, 0}), Error);
}
