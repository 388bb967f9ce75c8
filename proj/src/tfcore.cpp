#include "relsamp/tfcore.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "relsamp/error.hpp"

namespace relsamp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidRegion: return "invalid-region";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

void require_same_dim(int a, int b, const char* where) {
  if (a != b) {
    throw Error(ErrorKind::InvalidDimension,
                std::string(where) + ": dimension mismatch (" + std::to_string(a) +
                    " vs " + std::to_string(b) + ")");
  }
}

void require_point(TFPoint p, int L, const char* where) {
  if (p.m < 0 || p.m >= L || p.n < 0 || p.n >= L) {
    throw Error(ErrorKind::InvalidDimension,
                std::string(where) + ": point (" + std::to_string(p.m) + ", " +
                    std::to_string(p.n) + ") outside the " + std::to_string(L) +
                    "x" + std::to_string(L) + " grid");
  }
}

}  // namespace

Signal::Signal(CVector values) : values_(std::move(values)) {
  if (values_.size() == 0) {
    throw Error(ErrorKind::InvalidDimension, "Signal: empty signal");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorKind::InvalidParameter, "Signal: non-finite entries");
  }
}

Signal Signal::zeros(int L) { return Signal(CVector::Zero(L)); }

Signal operator+(const Signal& a, const Signal& b) {
  require_same_dim(a.dim(), b.dim(), "Signal::operator+");
  return Signal(a.values_ + b.values_);
}

Signal operator-(const Signal& a, const Signal& b) {
  require_same_dim(a.dim(), b.dim(), "Signal::operator-");
  return Signal(a.values_ - b.values_);
}

Signal operator*(Complex s, const Signal& a) { return Signal(s * a.values_); }

Window::Window(Signal s) : signal_(std::move(s)) {
  if (std::abs(signal_.norm() - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::InvalidParameter, "Window: signal is not unit norm");
  }
}

Window Window::normalized(const Signal& s) {
  const double norm = s.norm();
  if (norm == 0.0) {
    throw Error(ErrorKind::InvalidParameter, "Window: cannot normalize the zero signal");
  }
  return Window(Signal(s.values() / norm));
}

TFMatrix::TFMatrix(CMatrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw Error(ErrorKind::InvalidDimension, "TFMatrix: array must be square");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorKind::InvalidParameter, "TFMatrix: non-finite entries");
  }
}

double TFMatrix::energy() const {
  return values_.squaredNorm() / static_cast<double>(values_.rows());
}

std::vector<Complex> unit_roots(int L) {
  std::vector<Complex> roots(L);
  for (int k = 0; k < L; ++k) {
    roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / L);
  }
  return roots;
}

int wrap_index(long long k, int L) {
  const long long r = k % L;
  return static_cast<int>(r < 0 ? r + L : r);
}

Complex inner(const Signal& a, const Signal& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  // Eigen's dot conjugates its first operand.
  return b.values().dot(a.values());
}

Window make_gaussian_window(int L) {
  if (L < 4) {
    throw Error(ErrorKind::InvalidDimension,
                "make_gaussian_window: L must be at least 4, got " + std::to_string(L));
  }
  // Terms with |k| > 4 are below exp(-pi * 9 L) and vanish in double precision.
  constexpr int kPeriods = 4;
  CVector values(L);
  for (int t = 0; t <= L / 2; ++t) {
    double sum = 0.0;
    for (int k = -kPeriods; k <= kPeriods; ++k) {
      const double x = t + static_cast<double>(k) * L;
      sum += std::exp(-std::numbers::pi * x * x / L);
    }
    values[t] = sum;
    values[(L - t) % L] = sum;
  }
  return Window::normalized(Signal(std::move(values)));
}

Signal tf_shift(const Signal& f, TFPoint lambda) {
  const int L = f.dim();
  require_point(lambda, L, "tf_shift");
  const auto roots = unit_roots(L);
  CVector out(L);
  for (int t = 0; t < L; ++t) {
    out[t] = f[wrap_index(t - lambda.m, L)] *
             roots[static_cast<std::size_t>((static_cast<long long>(lambda.n) * t) % L)];
  }
  return Signal(std::move(out));
}

Signal tf_atom(const Window& phi, TFPoint lambda) { return tf_shift(phi.signal(), lambda); }

TFMatrix stft(const Signal& f, const Window& phi) {
  const int L = f.dim();
  require_same_dim(L, phi.dim(), "stft");
  // Column m holds f(t) conj(phi(t - m)); its forward DFT is V(m, .).
  CMatrix columns(L, L);
  for (int m = 0; m < L; ++m) {
    for (int t = 0; t < L; ++t) {
      columns(t, m) = f[t] * std::conj(phi[wrap_index(t - m, L)]);
    }
  }
  detail::dft_columns(columns, detail::FftDirection::Forward);
  return TFMatrix(columns.transpose());
}

Signal stft_adjoint(const TFMatrix& F, const Window& phi) {
  const int L = F.dim();
  require_same_dim(L, phi.dim(), "stft_adjoint");
  CMatrix columns = F.values().transpose();
  detail::dft_columns(columns, detail::FftDirection::Backward);
  CVector out = CVector::Zero(L);
  for (int m = 0; m < L; ++m) {
    for (int t = 0; t < L; ++t) {
      out[t] += phi[wrap_index(t - m, L)] * columns(t, m);
    }
  }
  return Signal(out / static_cast<double>(L));
}

Complex stft_point(const Signal& f, const Window& phi, TFPoint lambda) {
  const int L = f.dim();
  require_same_dim(L, phi.dim(), "stft_point");
  require_point(lambda, L, "stft_point");
  Complex acc = 0.0;
  for (int t = 0; t < L; ++t) {
    const double angle =
        -2.0 * std::numbers::pi *
        static_cast<double>((static_cast<long long>(lambda.n) * t) % L) / L;
    acc += f[t] * std::conj(phi[wrap_index(t - lambda.m, L)]) * std::polar(1.0, angle);
  }
  return acc;
}

}  // namespace relsamp
