#pragma once

#include <vector>

#include "charsum/common.hpp"

namespace charsum::fft {

// In-place iterative radix-2 transform; n must be a power of two.
// sign = +1 computes X_k = sum_n x_n e(+nk/N), sign = -1 the conjugate kernel.
void transform_pow2(std::vector<cplx>& a, int sign);

// Arbitrary-length DFT with the same kernel convention; power-of-two sizes go
// through transform_pow2 directly, everything else through the Bluestein
// chirp-z convolution (chirp phases reduced mod 2N in integers, so they stay
// accurate at large N).
std::vector<cplx> dft(const std::vector<cplx>& x, int sign);

// O(N^2) reference used as the agreement oracle in tests.
std::vector<cplx> dft_naive(const std::vector<cplx>& x, int sign);

}  // namespace charsum::fft
