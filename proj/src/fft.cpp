#include "fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace relsamp::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

class Plan {
 public:
  Plan(CMatrix& columns, FftDirection direction) {
    const int n = static_cast<int>(columns.rows());
    const int howmany = static_cast<int>(columns.cols());
    auto* data = reinterpret_cast<fftw_complex*>(columns.data());
    const int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE leaves the arrays untouched while planning.
    plan_ = fftw_plan_many_dft(1, &n, howmany, data, nullptr, 1, n, data, nullptr,
                               1, n, sign, FFTW_ESTIMATE);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }

  void execute() { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace

void dft_columns(CMatrix& columns, FftDirection direction) {
  if (columns.size() == 0) return;
  Plan plan(columns, direction);
  plan.execute();
}

void dft_2d(CMatrix& grid, FftDirection direction) {
  dft_columns(grid, direction);
  CMatrix transposed = grid.transpose();
  dft_columns(transposed, direction);
  grid = transposed.transpose();
}

}  // namespace relsamp::detail
