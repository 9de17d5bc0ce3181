#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace tsnet::detail {

using cplx = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 FFT; a.size() must be a power of two.
inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& z : a) z /= static_cast<double>(n);
  }
}

/// Forward DFT X_k = sum_j x_j exp(-2 pi i jk/n) of a real sequence, any length (Bluestein for
/// non powers of two).
inline std::vector<cplx> dft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if ((n & (n - 1)) == 0) {
    std::vector<cplx> a(x.begin(), x.end());
    fft_pow2(a, false);
    return a;
  }
  // chirp w_j = exp(-i pi j^2 / n); j^2 reduced mod 2n to keep the angle accurate
  std::vector<cplx> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t j2 = (j * j) % (2 * n);
    const double ang = std::numbers::pi * static_cast<double>(j2) / static_cast<double>(n);
    w[j] = cplx(std::cos(ang), -std::sin(ang));
  }
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<cplx> a(m), b(m);
  for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * w[j];
  b[0] = std::conj(w[0]);
  for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(w[j]);
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, true);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * w[k];
  return out;
}

}  // namespace tsnet::detail
