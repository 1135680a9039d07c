// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Test-only reference implementations, deliberately naive and independent
// of the library code paths they check.

#ifndef SF3D_TESTS_SUPPORT_ORACLES_HPP_
#define SF3D_TESTS_SUPPORT_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "sf3d/common.hpp"

namespace sf3d_test {

// Direct O(n^2) DFT.
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<double>& x, std::size_t nfft) {
  std::vector<std::complex<double>> out(nfft);
  for (std::size_t k = 0; k < nfft; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t n = 0; n < x.size() && n < nfft; ++n) {
      const double ang = -2.0 * sf3d::kPi * static_cast<double>(k) *
                         static_cast<double>(n) / static_cast<double>(nfft);
      acc += x[n] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

inline std::vector<double> naive_convolve(const std::vector<double>& a,
                                          const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline double rel_l2(const std::vector<double>& a,
                     const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

// First time the backward-integrated (Schroeder) energy decay curve drops
// 60 dB below its initial value.
inline double schroeder_cross60(const std::vector<double>& taps, int fs) {
  double total = 0.0;
  for (double t : taps) total += t * t;
  if (total <= 0.0) return 0.0;
  double tail = total;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (tail <= 1e-6 * total) return static_cast<double>(i) / fs;
    tail -= taps[i] * taps[i];
  }
  return static_cast<double>(taps.size()) / fs;
}

// Reverberation time from the backward-integrated (Schroeder) energy decay
// curve: least-squares line through the [-25, -5] dB stretch, extrapolated
// to -60 dB.
inline double schroeder_t60(const std::vector<double>& taps, int fs) {
  std::vector<double> edc(taps.size());
  double acc = 0.0;
  for (std::size_t i = taps.size(); i-- > 0;) {
    acc += taps[i] * taps[i];
    edc[i] = acc;
  }
  if (acc <= 0.0) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < edc.size(); ++i) {
    const double db = 10.0 * std::log10(edc[i] / acc);
    if (db > -5.0 || db < -25.0) continue;
    const double t = static_cast<double>(i) / fs;
    sx += t;
    sy += db;
    sxx += t * t;
    sxy += t * db;
    ++n;
  }
  if (n < 2) return 0.0;
  const double slope =
      (static_cast<double>(n) * sxy - sx * sy) /
      (static_cast<double>(n) * sxx - sx * sx);
  return slope < 0 ? -60.0 / slope : 0.0;
}

}  // namespace sf3d_test

#endif  // SF3D_TESTS_SUPPORT_ORACLES_HPP_
