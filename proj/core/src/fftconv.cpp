#include "fftconv.hpp"

#include <algorithm>
#include <cmath>

namespace looptrees::detail {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b,
                             std::size_t out_len) {
  if (a.empty() || b.empty() || out_len == 0) return {};
  const std::size_t na = std::min(a.size(), out_len);
  const std::size_t nb = std::min(b.size(), out_len);
  std::vector<double> out(out_len, 0.0);
  if (static_cast<double>(na) * static_cast<double>(nb) <= 1 << 22) {
    for (std::size_t i = 0; i < na; ++i) {
      if (a[i] == 0.0) continue;
      const std::size_t jmax = std::min(nb, out_len - i);
      for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  std::size_t need = na + nb - 1;
  std::size_t L = 1;
  while (L < need) L <<= 1;
  std::vector<std::complex<double>> fa(L), fb(L);
  for (std::size_t i = 0; i < na; ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < nb; ++i) fb[i] = b[i];
  fft_inplace(fa, false);
  fft_inplace(fb, false);
  for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
  fft_inplace(fa, true);
  const std::size_t kept = std::min(out_len, need);
  for (std::size_t i = 0; i < kept; ++i) out[i] = std::max(0.0, fa[i].real());
  return out;
}

}  // namespace looptrees::detail
