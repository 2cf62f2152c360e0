// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tfa/common.hpp"

namespace tfa::fft {

// In-place unnormalized DFT, sign=-1 forward / sign=+1 backward.
// Thread-safe; plans are cached per (size, sign).
void transform(std::vector<cplx>& x, int sign);

}  // namespace tfa::fft
