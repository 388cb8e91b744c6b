#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace trigfun::detail {

using Complex = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// exp(sign * 2*pi*i * k / n) with the argument reduced to the first octant's
// neighbourhood so large k lose no accuracy.
inline Complex unit_root(std::int64_t k, std::int64_t n, int sign) {
  k %= n;
  if (k < 0) k += n;
  const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(theta), sign * std::sin(theta)};
}

inline void fft_radix2(std::vector<Complex>& x, int sign) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k)
    twiddle[k] = unit_root(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n), sign);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = x[start + k];
        const Complex v = x[start + k + half] * twiddle[k * stride];
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
}

// Bluestein's chirp-z algorithm for lengths that are not powers of two.
inline void fft_bluestein(std::vector<Complex>& x, int sign) {
  const std::size_t n = x.size();
  const std::size_t m = next_power_of_two(2 * n - 1);
  const auto n2 = static_cast<std::int64_t>(2 * n);
  std::vector<Complex> chirp(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<std::int64_t>(j);
    // exp(sign*pi*i*j^2/n) = exp(sign*2*pi*i*(j^2 mod 2n)/(2n))
    chirp[j] = unit_root((jj * jj) % n2, n2, sign);
  }
  std::vector<Complex> a(m), b(m);
  for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
  b[0] = std::conj(chirp[0]);
  for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);
  fft_radix2(a, -1);
  fft_radix2(b, -1);
  for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
  fft_radix2(a, +1);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) x[k] = chirp[k] * a[k] * scale;
}

/// Unnormalised discrete Fourier transform in place:
/// x_k <- sum_j x_j exp(sign * 2*pi*i*j*k/n). Any length n >= 1.
inline void fft(std::vector<Complex>& x, int sign) {
  if (x.size() <= 1) return;
  if (is_power_of_two(x.size()))
    fft_radix2(x, sign);
  else
    fft_bluestein(x, sign);
}

}  // namespace trigfun::detail
