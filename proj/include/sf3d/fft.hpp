// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_FFT_HPP_
#define SF3D_FFT_HPP_

#include <algorithm>
#include <complex>
#include <vector>

#include "sf3d/common.hpp"

// Self-contained FFT: iterative radix-2 for power-of-two sizes and
// Bluestein's chirp-z transform for everything else (the 400-point
// analysis size is 2^4 * 5^2). Double precision throughout.

namespace sf3d {

using Cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline void fft_radix2(std::vector<Cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n < 2) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const Cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        Cplx u = a[i + k];
        Cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv;
  }
}

// Bluestein: X_k = conj(c_k) * (a * b)_k with chirp c_n = exp(i*pi*n^2/N).
// n^2 is reduced mod 2N before the angle so large N keeps full precision.
inline void fft_bluestein(std::vector<Cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Cplx> chirp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t m =
        (static_cast<std::uint64_t>(i) * i) % (2 * static_cast<std::uint64_t>(n));
    const double ang = sign * kPi * static_cast<double>(m) / static_cast<double>(n);
    chirp[i] = Cplx(std::cos(ang), std::sin(ang));
  }
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<Cplx> fa(m, Cplx(0, 0));
  std::vector<Cplx> fb(m, Cplx(0, 0));
  for (std::size_t i = 0; i < n; ++i) fa[i] = a[i] * chirp[i];
  for (std::size_t i = 0; i < n; ++i) {
    fb[i] = std::conj(chirp[i]);
    if (i) fb[m - i] = std::conj(chirp[i]);
  }
  fft_radix2(fa, false);
  fft_radix2(fb, false);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  fft_radix2(fa, true);
  for (std::size_t i = 0; i < n; ++i) a[i] = fa[i] * chirp[i];
  if (inverse) {
    const double invn = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= invn;
  }
}

}  // namespace detail

// In-place complex DFT of arbitrary size. Inverse includes the 1/N factor.
inline void fft(std::vector<Cplx>& a, bool inverse = false) {
  if (detail::is_pow2(a.size()))
    detail::fft_radix2(a, inverse);
  else
    detail::fft_bluestein(a, inverse);
}

// Real-input DFT, one-sided output of nfft/2 + 1 bins. The input is
// zero-padded (or truncated) to nfft.
inline std::vector<Cplx> rfft(const std::vector<double>& x, std::size_t nfft) {
  check(nfft >= 2, "rfft: nfft must be >= 2");
  std::vector<Cplx> a(nfft, Cplx(0, 0));
  const std::size_t n = std::min(x.size(), nfft);
  for (std::size_t i = 0; i < n; ++i) a[i] = Cplx(x[i], 0.0);
  fft(a, false);
  a.resize(nfft / 2 + 1);
  return a;
}

// Inverse of rfft: rebuilds the Hermitian spectrum and returns nfft real
// samples.
inline std::vector<double> irfft(const std::vector<Cplx>& half,
                                 std::size_t nfft) {
  check(half.size() == nfft / 2 + 1, "irfft: bin count does not match nfft");
  std::vector<Cplx> a(nfft);
  for (std::size_t i = 0; i < half.size(); ++i) a[i] = half[i];
  for (std::size_t i = 1; nfft - i > nfft / 2; ++i)
    a[nfft - i] = std::conj(half[i]);
  fft(a, true);
  std::vector<double> out(nfft);
  for (std::size_t i = 0; i < nfft; ++i) out[i] = a[i].real();
  return out;
}

// Linear convolution via a zero-padded power-of-two FFT.
inline std::vector<double> fft_convolve(const std::vector<double>& a,
                                        const std::vector<double>& b) {
  check(!a.empty() && !b.empty(), "fft_convolve: empty input");
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t m = detail::next_pow2(out_len);
  std::vector<Cplx> fa(m, Cplx(0, 0)), fb(m, Cplx(0, 0));
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = Cplx(a[i], 0);
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = Cplx(b[i], 0);
  fft(fa, false);
  fft(fb, false);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  fft(fa, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace sf3d

#endif  // SF3D_FFT_HPP_
