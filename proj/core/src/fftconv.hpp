#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace looptrees::detail {

// In-place iterative radix-2 FFT; a.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// Truncated linear convolution: out[x] = sum_i a[i]*b[x-i] for x < out_len.
// Direct evaluation for small inputs, zero-padded FFT (no wraparound into
// the kept window) for large ones; tiny negative FFT noise is clamped to 0.
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b,
                             std::size_t out_len);

}  // namespace looptrees::detail
