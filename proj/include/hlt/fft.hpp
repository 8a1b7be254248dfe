#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

// Iterative radix-2 complex FFT plus a separable multi-axis wrapper; enough
// for the periodic multiplier application in the spectral module.

namespace hlt::fft {

inline bool is_power_of_two(std::size_t n) {
  return n > 0 && (n & (n - 1)) == 0;
}

/// In-place radix-2 FFT; inverse = true applies the 1/n-normalized inverse.
inline void transform(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n))
    throw std::invalid_argument("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1 : -1);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

/// Separable d-dimensional FFT on a flattened array of extent n per axis
/// (row-major, last axis fastest).
inline void transform_nd(std::vector<std::complex<double>>& a, int d,
                         std::size_t n, bool inverse) {
  if (d < 1) throw std::invalid_argument("fft: d >= 1");
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= n;
  if (a.size() != total)
    throw std::invalid_argument("fft: size mismatch with extents");
  std::vector<std::complex<double>> line(n);
  std::size_t stride = 1;
  for (int axis = d - 1; axis >= 0; --axis) {
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t i = 0; i < n; ++i)
          line[i] = a[base + off + i * stride];
        transform(line, inverse);
        for (std::size_t i = 0; i < n; ++i)
          a[base + off + i * stride] = line[i];
      }
    }
    stride *= n;
  }
}

}  // namespace hlt::fft
