#pragma once

// Discrete time-frequency analysis on the cyclic group Z_L.
//
// Conventions used throughout the library:
//   (pi(m,n) f)(t) = f((t - m) mod L) * exp(2 pi i n t / L)
//   V_phi f(m,n)   = <f, pi(m,n) phi> = sum_t f(t) conj(phi(t - m)) exp(-2 pi i n t / L)
// Every grid point of the L x L time-frequency plane carries measure 1/L, so
// the full grid has measure L and (1/L) sum |V_phi f|^2 = |f|^2 |phi|^2.

#include <complex>
#include <compare>
#include <vector>

#include <Eigen/Dense>

namespace relsamp {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// A point of the discrete time-frequency grid: m is time, n is frequency.
struct TFPoint {
  int m = 0;
  int n = 0;

  friend auto operator<=>(const TFPoint&, const TFPoint&) = default;
};

class Signal {
 public:
  Signal() = default;
  explicit Signal(CVector values);

  static Signal zeros(int L);

  int dim() const { return static_cast<int>(values_.size()); }
  const CVector& values() const { return values_; }
  Complex operator[](int t) const { return values_[t]; }

  double squared_norm() const { return values_.squaredNorm(); }
  double norm() const { return values_.norm(); }

  friend Signal operator+(const Signal& a, const Signal& b);
  friend Signal operator-(const Signal& a, const Signal& b);
  friend Signal operator*(Complex s, const Signal& a);

 private:
  CVector values_;
};

// Unit-norm analysis atom.
class Window {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Throws InvalidParameter unless | |s| - 1 | <= kNormTolerance.
  explicit Window(Signal s);
  static Window normalized(const Signal& s);

  int dim() const { return signal_.dim(); }
  const Signal& signal() const { return signal_; }
  const CVector& values() const { return signal_.values(); }
  Complex operator[](int t) const { return signal_[t]; }

 private:
  Signal signal_;
};

// STFT coefficients laid out as an L x L array indexed (m, n).
class TFMatrix {
 public:
  TFMatrix() = default;
  explicit TFMatrix(CMatrix values);

  int dim() const { return static_cast<int>(values_.rows()); }
  const CMatrix& values() const { return values_; }
  Complex operator()(int m, int n) const { return values_(m, n); }
  Complex operator()(TFPoint p) const { return values_(p.m, p.n); }

  // (1/L) * sum |V(m,n)|^2, i.e. the squared L2 norm under the grid measure.
  double energy() const;

 private:
  CMatrix values_;
};

// exp(2 pi i k / L) for k = 0..L-1.
std::vector<Complex> unit_roots(int L);

int wrap_index(long long k, int L);

// <a, b> = sum a(t) conj(b(t)), linear in the first argument.
Complex inner(const Signal& a, const Signal& b);

// Periodized discrete Gaussian c * sum_k exp(-pi (t + kL)^2 / L), unit norm,
// centred at t = 0 and exactly symmetric under t -> L - t.
Window make_gaussian_window(int L);

Signal tf_shift(const Signal& f, TFPoint lambda);
// pi(lambda) phi, the atom whose inner product with f gives V_phi f(lambda).
Signal tf_atom(const Window& phi, TFPoint lambda);

// Full STFT, one FFT of length L per time shift.
TFMatrix stft(const Signal& f, const Window& phi);

// Adjoint of stft under the 1/L grid measure:
//   g(t) = (1/L) sum_{m,n} F(m,n) phi(t - m) exp(2 pi i n t / L).
Signal stft_adjoint(const TFMatrix& F, const Window& phi);

// Single STFT coefficient in O(L).
Complex stft_point(const Signal& f, const Window& phi, TFPoint lambda);

}  // namespace relsamp
