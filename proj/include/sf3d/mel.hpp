// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_MEL_HPP_
#define SF3D_MEL_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/stft.hpp"

namespace sf3d {

inline double hz_to_mel(double hz) {
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}

inline double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

struct MelFilterbank {
  int n_mels = 40;
  double fmin = 0.0;
  double fmax = 8000.0;
  MatD weights;                       // n_mels x bins, triangular rows
  std::vector<double> center_freqs;   // Hz, strictly increasing
};

// Triangular filters with edges uniformly spaced on the mel scale
// (mel(f) = 2595*log10(1 + f/700)). Rows are unnormalized, peak 1.
inline MelFilterbank make_mel_filterbank(int n_mels, int bins, int sample_rate,
                                         double fmin = 0.0, double fmax = -1.0) {
  check(n_mels > 0, "mel: n_mels must be positive");
  check(bins >= 2, "mel: need at least two frequency bins");
  if (fmax <= 0.0) fmax = sample_rate / 2.0;
  check(fmin >= 0.0 && fmin < fmax, "mel: need 0 <= fmin < fmax");

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.fmin = fmin;
  fb.fmax = fmax;
  fb.weights = MatD(n_mels, bins, 0.0);

  const int fft_size = 2 * (bins - 1);
  const double mel_lo = hz_to_mel(fmin);
  const double mel_hi = hz_to_mel(fmax);
  std::vector<double> edges(n_mels + 2);
  for (int j = 0; j < n_mels + 2; ++j)
    edges[j] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * j / (n_mels + 1));

  for (int j = 0; j < n_mels; ++j) {
    const double left = edges[j], center = edges[j + 1], right = edges[j + 2];
    fb.center_freqs.push_back(center);
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / fft_size;
      double w = 0.0;
      if (f > left && f < right) {
        w = f <= center ? (f - left) / (center - left)
                        : (right - f) / (right - center);
      }
      fb.weights(j, k) = w;
    }
  }
  return fb;
}

// Log mel-filterbank energies, log(max(sum_f w[j,f]*|Y|^2, floor_eps)).
inline MatD lfb(const ComplexSpectrogram& spec, const MelFilterbank& fb,
                double floor_eps = 1e-12) {
  check(floor_eps > 0, "lfb: floor_eps must be positive");
  check(fb.weights.cols() == spec.bins(),
        "lfb: filterbank bin count does not match spectrogram");
  MatD out(spec.frames(), fb.n_mels);
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    for (int j = 0; j < fb.n_mels; ++j) {
      double e = 0.0;
      for (std::size_t f = 0; f < spec.bins(); ++f)
        e += fb.weights(j, f) * std::norm(spec.data(t, f));
      out(t, j) = std::log(std::max(e, floor_eps));
    }
  }
  return out;
}

}  // namespace sf3d

#endif  // SF3D_MEL_HPP_
