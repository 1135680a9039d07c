// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_MASK_HPP_
#define SF3D_MASK_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/spatial.hpp"
#include "sf3d/stft.hpp"

// Time-frequency masks and waveform-domain separation metrics.

namespace sf3d {

struct Mask {
  MatD data;  // frames x bins, values in [0, 1]
};

// Oracle magnitude-ratio mask from the ground-truth source images.
inline Mask ideal_ratio_mask(const ComplexSpectrogram& target,
                             const ComplexSpectrogram& interference,
                             double eps = 1e-8) {
  check(target.data.same_shape(interference.data),
        "ideal_ratio_mask: spectrogram shapes differ");
  check(eps > 0, "ideal_ratio_mask: eps must be positive");
  Mask m;
  m.data = MatD(target.frames(), target.bins());
  for (std::size_t t = 0; t < target.frames(); ++t)
    for (std::size_t f = 0; f < target.bins(); ++f) {
      const double a = std::abs(target.data(t, f));
      const double b = std::abs(interference.data(t, f));
      m.data(t, f) = a / (a + b + eps);
    }
  return m;
}

// Soft mask from the spatial feature: cells whose observed IPDs agree with
// the target's location score high. The feature is normalized by the pair
// count, then squashed with a sigmoid around `threshold`.
inline Mask sf_mask(const SfMatrix& sf, double sharpness = 10.0,
                    double threshold = 0.5) {
  check(sf.pair_count > 0, "sf_mask: empty pair set");
  check(sharpness > 0, "sf_mask: sharpness must be positive");
  Mask m;
  m.data = MatD(sf.data.rows(), sf.data.cols());
  const double scale = 1.0 / static_cast<double>(sf.pair_count);
  for (std::size_t i = 0; i < sf.data.size(); ++i) {
    const double z = sharpness * (sf.data.data()[i] * scale - threshold);
    m.data.data()[i] = 1.0 / (1.0 + std::exp(-z));
  }
  return m;
}

// Pointwise mask application followed by inverse STFT.
inline Waveform apply_mask(const ComplexSpectrogram& spec, const Mask& mask) {
  check(spec.data.same_shape(mask.data), "apply_mask: mask shape mismatch");
  ComplexSpectrogram masked = spec;
  for (std::size_t i = 0; i < masked.data.size(); ++i)
    masked.data.data()[i] *= mask.data.data()[i];
  return istft(masked);
}

namespace detail {

inline double ratio_db_clamped(double num, double den) {
  // +-60 dB caps keep degenerate (near-exact or hopeless) estimates finite.
  if (num <= 0) return -60.0;
  if (den <= 0) return 60.0;
  return std::clamp(10.0 * std::log10(num / den), -60.0, 60.0);
}

inline double projection_snr_db(const std::vector<double>& est,
                                const std::vector<double>& ref,
                                bool zero_mean, const char* name) {
  check(est.size() == ref.size() && !ref.empty(),
        std::string(name) + ": signals must share a nonzero length");
  double mu_e = 0.0, mu_r = 0.0;
  if (zero_mean) {
    for (double v : est) mu_e += v;
    for (double v : ref) mu_r += v;
    mu_e /= static_cast<double>(est.size());
    mu_r /= static_cast<double>(ref.size());
  }
  double rr = 0.0, er = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double r = ref[i] - mu_r;
    rr += r * r;
    er += (est[i] - mu_e) * r;
  }
  check(rr > 0, std::string(name) + ": reference has zero energy");
  const double alpha = er / rr;
  double ee = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double e = (est[i] - mu_e) - alpha * (ref[i] - mu_r);
    ee += e * e;
  }
  return ratio_db_clamped(alpha * alpha * rr, ee);
}

}  // namespace detail

// Scale-invariant signal-to-noise ratio: both signals are mean-removed, the
// estimate is projected onto the reference, and the ratio of projection to
// residual energy is reported in dB (clamped to +-60).
inline double si_snr(const Waveform& est, const Waveform& ref) {
  return detail::projection_snr_db(est.samples, ref.samples, true, "si_snr");
}

// Same projection ratio without mean removal.
inline double sdr(const Waveform& est, const Waveform& ref) {
  return detail::projection_snr_db(est.samples, ref.samples, false, "sdr");
}

// Mean spatial-feature value over target-dominated cells minus the mean
// over interferer-dominated cells. Cells more than 40 dB below the louder
// image's peak energy are ignored. A discriminative feature is large where
// the target dominates, so bigger is better.
inline double sf_contrast(const SfMatrix& sf, const ComplexSpectrogram& target,
                          const ComplexSpectrogram& interference,
                          double gate_db = 40.0) {
  check(sf.data.rows() == target.frames() && sf.data.cols() == target.bins(),
        "sf_contrast: feature/spectrogram shapes differ");
  check(target.data.same_shape(interference.data),
        "sf_contrast: spectrogram shapes differ");
  double peak = 0.0;
  for (std::size_t i = 0; i < target.data.size(); ++i) {
    peak = std::max(peak, std::norm(target.data.data()[i]));
    peak = std::max(peak, std::norm(interference.data.data()[i]));
  }
  check(peak > 0, "sf_contrast: both images are silent");
  const double gate = peak * std::pow(10.0, -gate_db / 10.0);

  double sum_t = 0.0, sum_i = 0.0;
  std::size_t n_t = 0, n_i = 0;
  for (std::size_t t = 0; t < target.frames(); ++t)
    for (std::size_t f = 0; f < target.bins(); ++f) {
      const double pt = std::norm(target.data(t, f));
      const double pi = std::norm(interference.data(t, f));
      if (std::max(pt, pi) < gate) continue;
      if (pt > pi) {
        sum_t += sf.data(t, f);
        ++n_t;
      } else {
        sum_i += sf.data(t, f);
        ++n_i;
      }
    }
  check(n_t > 0, "sf_contrast: no target-dominated cells above the gate");
  check(n_i > 0, "sf_contrast: no interferer-dominated cells above the gate");
  return sum_t / static_cast<double>(n_t) - sum_i / static_cast<double>(n_i);
}

struct SeparationResult {
  double si_snr_db = 0.0;
  double sdr_db = 0.0;
  double baseline_si_snr_db = 0.0;  // mixture vs reference, no processing
};

}  // namespace sf3d

#endif  // SF3D_MASK_HPP_
