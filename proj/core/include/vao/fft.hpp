#pragma once

#include <vector>

#include "vao/constants.hpp"

namespace vao::fft {

/// In-place DFT, no scaling. Plans are cached per size (FFTW_ESTIMATE, so
/// repeated runs are bit-reproducible) and shared across threads.
void forward(std::vector<cplx>& data);

/// In-place inverse DFT with 1/N scaling.
void inverse(std::vector<cplx>& data);

std::vector<cplx> forward_copy(const std::vector<cplx>& data);
std::vector<cplx> inverse_copy(const std::vector<cplx>& data);

}  // namespace vao::fft
