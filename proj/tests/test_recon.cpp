#include <doctest.h>

#include <cmath>

#include <Eigen/QR>

#include "oracles.hpp"
#include "relsamp/bounds.hpp"
#include "relsamp/error.hpp"
#include "relsamp/recon.hpp"
#include "relsamp/sampling.hpp"

using namespace relsamp;

namespace {

struct Setup {
  TFRegion region;
  Window phi;
  EigenSystem eigs;
};

Setup make_setup(int L, TFPoint center, double radius) {
  TFRegion region = disk_region(L, center, radius);
  Window phi = make_gaussian_window(L);
  EigenSystem eigs = eigendecompose(build_localization_operator(region, phi));
  return {std::move(region), std::move(phi), std::move(eigs)};
}

double sampled_residual_sq(const Signal& f, const Signal& p, const SampleSet& s,
                           const Window& phi) {
  double acc = 0.0;
  for (const auto& q : s.points) acc += std::norm(stft_point(f, phi, q) - stft_point(p, phi, q));
  return acc;
}

CMatrix random_psd(int n, int rank, std::mt19937_64& rng) {
  CMatrix B(n, rank);
  for (int j = 0; j < rank; ++j) B.col(j) = oracle::random_vector(n, rng);
  return B * B.adjoint();
}

}  // namespace

TEST_CASE("normal equations on the full grid") {
  std::mt19937_64 rng(71);
  const int L = 16;
  const Setup st = make_setup(L, {8, 8}, 4.0);
  SampleSet all;
  all.L = L;
  for (int m = 0; m < L; ++m) {
    for (int n = 0; n < L; ++n) all.points.push_back({m, n});
  }
  const CVector coeffs = oracle::random_vector(st.eigs.N(), rng);
  const Signal f(st.eigs.subspace_basis() * coeffs);
  const auto sys = gram_and_rhs(all, st.eigs, st.phi, sample_stft(f, all, st.phi));
  const int N = st.eigs.N();
  CHECK((sys.G - L * CMatrix::Identity(N, N)).cwiseAbs().maxCoeff() <= 1e-10);
  const auto cg = cg_solve(sys.G, sys.b, 1e-12, 10 * N);
  CHECK(cg.converged);
  CHECK(cg.iterations <= 2);
  CHECK((cg.solution - coeffs).norm() <= 1e-10 * coeffs.norm());
}

TEST_CASE("Gram matrix equals the sum of T matrices") {
  std::mt19937_64 rng(72);
  const Setup st = make_setup(16, {5, 10}, 4.0);
  const SampleSet s = uniform_sample(st.region, 37, 9, false);
  const auto sys = gram_and_rhs(s, st.eigs, st.phi, CVector::Zero(37));
  CMatrix sum = CMatrix::Zero(st.eigs.N(), st.eigs.N());
  for (const auto& p : s.points) sum += build_T_matrix(p, st.eigs, st.phi).entries;
  CHECK((sys.G - sum.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(sys.b.norm() == 0.0);
  const auto cg = cg_solve(sys.G, sys.b, 1e-12, 100);
  CHECK(cg.solution.norm() == 0.0);
  CHECK(cg.iterations == 0);
  CHECK(cg.converged);
  CHECK_THROWS_AS(gram_and_rhs(s, st.eigs, st.phi, CVector::Zero(3)), Error);
}

TEST_CASE("conjugate gradient against direct solves") {
  std::mt19937_64 rng(73);
  const CVector b = oracle::random_vector(6, rng);
  const auto id = cg_solve(CMatrix::Identity(6, 6), b, 1e-12, 10);
  CHECK(id.iterations == 1);
  CHECK((id.solution - b).norm() <= 1e-14 * b.norm());

  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix G = random_psd(10, 12, rng) + 0.1 * CMatrix::Identity(10, 10);
    const CVector rhs = oracle::random_vector(10, rng);
    const auto cg = cg_solve(G, rhs, 1e-13, 200);
    const CVector direct = G.ldlt().solve(rhs);
    CHECK(cg.converged);
    CHECK((cg.solution - direct).norm() <= 1e-9 * direct.norm());
    CHECK(cg.relative_residual <= 1e-13);
  }

  // Singular system with b in the range: minimum-norm solution from zero start.
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix G = random_psd(10, 4, rng);
    const CVector rhs = G * oracle::random_vector(10, rng);
    const auto cg = cg_solve(G, rhs, 1e-12, 100);
    const CVector min_norm = G.completeOrthogonalDecomposition().solve(rhs);
    CHECK(cg.converged);
    CHECK((cg.solution - min_norm).norm() <= 1e-8 * min_norm.norm());
  }

  const CMatrix hard = random_psd(30, 30, rng) + 1e-6 * CMatrix::Identity(30, 30);
  const auto capped = cg_solve(hard, oracle::random_vector(30, rng), 1e-15, 2);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 2);
  CHECK_THROWS_AS(cg_solve(hard, CVector::Zero(30), 0.0, 5), Error);
  CHECK_THROWS_AS(cg_solve(hard, CVector::Zero(29), 1e-10, 5), Error);
}

TEST_CASE("property: CG objective and sampled residual are non-increasing") {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> dim(3, 25);
    const int n = dim(rng);
    const CMatrix G = random_psd(n, n + 2, rng);
    const auto cg = cg_solve(G, oracle::random_vector(n, rng), 1e-12, 5 * n);
    const double scale = std::abs(cg.objective_history.back()) + 1.0;
    for (std::size_t k = 1; k < cg.objective_history.size(); ++k) {
      CHECK(cg.objective_history[k] <= cg.objective_history[k - 1] + 1e-12 * scale);
    }
  }
  const Setup st = make_setup(32, {16, 16}, 7.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Signal f = oracle::random_signal(32, rng);
    const SampleSet s = uniform_sample(st.region, 40 + 20 * trial, rng(), true);
    const auto res = reconstruct(f, s, st.eigs, st.phi, st.region);
    const auto& h = res.sampled_residual_history;
    REQUIRE(h.size() == static_cast<std::size_t>(res.iterations) + 1);
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1] * (1.0 + 1e-10) + 1e-12);
    CHECK(std::abs(h.back() - res.residual_norm) <= 1e-8 * std::max(1.0, res.residual_norm));
  }
}

TEST_CASE("perfect reconstruction of subspace functions") {
  std::mt19937_64 rng(75);
  const Setup st = make_setup(32, {16, 16}, 7.0);
  const SampleSet s = uniform_sample(st.region, 120, 17, true);
  REQUIRE(subspace_frame_bounds(s, st.eigs, st.phi).lower > 1e-6);
  for (int trial = 0; trial < 5; ++trial) {
    const Signal f = random_subspace_function(st.eigs, rng());
    const auto res = reconstruct(f, s, st.eigs, st.phi, st.region);
    CHECK(res.converged);
    CHECK(res.relative_error <= 1e-10);
    CHECK((res.p_opt - f).norm() <= 1e-8);
    CHECK((Signal(st.eigs.subspace_basis() * res.coefficients) - res.p_opt).norm() <= 1e-12);
    CHECK(res.iterations >= 0);
    CHECK(res.residual_norm >= 0.0);
  }
  CHECK_THROWS_AS(reconstruct(Signal::zeros(32), s, st.eigs, st.phi, st.region), Error);
}

TEST_CASE("property: least-squares optimality, projection comparison and error estimate") {
  std::mt19937_64 rng(76);
  const Setup st = make_setup(32, {12, 18}, 7.0);
  const double gamma = st.eigs.gamma();
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_real_distribution<double> e(0.01, 0.3);
    const Signal f = make_concentrated_test_function(st.eigs, e(rng), rng());
    const SampleSet s = uniform_sample(st.region, 60 + 10 * trial, rng(), trial % 2 == 0);
    const auto res = reconstruct(f, s, st.eigs, st.phi, st.region);
    const double best = sampled_residual_sq(f, res.p_opt, s, st.phi);
    CHECK(std::abs(best - res.residual_norm * res.residual_norm) <= 1e-9 * std::max(1.0, best));
    for (int d = 0; d < 20; ++d) {
      CVector dir = oracle::random_vector(st.eigs.N(), rng);
      dir *= 1e-3 / dir.norm();
      for (double sign : {1.0, -1.0}) {
        const Signal p(st.eigs.subspace_basis() * (res.coefficients + sign * dir));
        CHECK(sampled_residual_sq(f, p, s, st.phi) >= best - 1e-10 * std::max(1.0, best));
      }
    }
    const Signal pf = project_VN(f, st.eigs);
    CHECK(best <= sampled_residual_sq(f, pf, s, st.phi) + 1e-10);
    const double B = exact_bessel_bound(s, st.phi);
    CHECK(res.bessel_B == B);
    CHECK(best <= B * res.epsilon / (1.0 - gamma) * f.squared_norm() + 1e-8);
    CHECK(res.relative_error <= res.error_bound);
    CHECK(res.error_bound == doctest::Approx(error_bound(B, res.epsilon, gamma)));
  }
}

TEST_CASE("error bound values") {
  CHECK(error_bound(7.0, 0.0, 0.5) == 0.0);
  CHECK(error_bound(7.845, 0.0335, 0.5) == doctest::Approx(0.7249931034154739).epsilon(1e-13));
  CHECK(error_bound(7.845, 1.8252e-9, 0.5) ==
        doctest::Approx(1.692258490893161e-4).epsilon(1e-12));
  CHECK_THROWS_AS(error_bound(7.0, 1.0, 0.5), Error);
  CHECK_THROWS_AS(error_bound(7.0, 0.1, 1.0), Error);
  // The two published table rows imply nearly the same Bessel constant.
  const double B1 = 0.72491 * 0.72491 / (2.0 * 0.0335);
  const double B2 = 1.6927e-4 * 1.6927e-4 / (2.0 * 1.8252e-9);
  CHECK(std::abs(B1 - B2) <= 0.01 * B2);
}

TEST_CASE("concentrated test functions") {
  const Setup st = make_setup(64, {32, 32}, 20.0);
  for (double eps : {0.1, 0.03, 1e-4, 1e-8}) {
    const Signal f = make_concentrated_test_function(st.eigs, eps, 5);
    CHECK(std::abs(f.norm() - 1.0) <= 1e-12);
    const double value = concentration(f, st.region, st.phi).value;
    CHECK(std::abs(value - (1.0 - eps)) <= 1e-6 * (1.0 - eps));
    const Signal again = make_concentrated_test_function(st.eigs, eps, 5);
    CHECK((again - f).norm() == 0.0);
  }
  CHECK_THROWS_AS(make_concentrated_test_function(st.eigs, 0.0, 1), Error);
  try {
    make_concentrated_test_function(st.eigs, 0.999, 1);
    FAIL("expected an infeasible error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
  const Signal u = random_subspace_function(st.eigs, 3);
  CHECK((project_VN(u, st.eigs) - u).norm() <= 1e-12);
}
