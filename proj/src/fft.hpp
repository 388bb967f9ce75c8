#pragma once

// Private FFTW wrapper. FFTW's planner is not reentrant, so plan creation and
// destruction are serialized; executing a plan is thread-safe.

#include "relsamp/tfcore.hpp"

namespace relsamp::detail {

enum class FftDirection { Forward, Backward };

// In-place unnormalized DFT of every column of `columns`.
// Forward uses exp(-2 pi i k t / n), Backward exp(+2 pi i k t / n).
void dft_columns(CMatrix& columns, FftDirection direction);

// In-place unnormalized 2-D DFT of a square array.
void dft_2d(CMatrix& grid, FftDirection direction);

}  // namespace relsamp::detail
