// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_SYNTH_HPP_
#define SF3D_SYNTH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/stft.hpp"

// Deterministic speech-like signals for demos and self-contained tests:
// alternating voiced (harmonic stacks with pitch wobble and two formant
// bumps), unvoiced (pre-emphasized noise), and silent segments.

namespace sf3d {

inline Waveform white_noise(std::uint64_t seed, std::size_t num_samples,
                            int sample_rate = 16000, double rms = 0.1) {
  Rng rng(seed);
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(num_samples);
  for (auto& v : w.samples) v = rng.normal() * rms;
  return w;
}

inline Waveform synth_speech(std::uint64_t seed, double seconds,
                             int sample_rate = 16000) {
  check(seconds > 0, "synth_speech: duration must be positive");
  check(sample_rate > 0, "synth_speech: sample rate must be positive");
  Rng rng(seed);
  const std::size_t total =
      static_cast<std::size_t>(std::llround(seconds * sample_rate));
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(total, 0.0);

  // Per-speaker traits.
  const double f0_base = rng.uniform(95.0, 225.0);
  const double formant1 = rng.uniform(350.0, 800.0);
  const double formant2 = rng.uniform(1200.0, 2400.0);

  const double fs = static_cast<double>(sample_rate);
  std::size_t pos = 0;
  double prev_noise = 0.0;
  while (pos < total) {
    const double u = rng.uniform();
    const bool voiced = u < 0.55;
    const bool unvoiced = !voiced && u < 0.80;
    const double dur = voiced  ? rng.uniform(0.15, 0.40)
                       : unvoiced ? rng.uniform(0.05, 0.15)
                                  : rng.uniform(0.05, 0.25);
    const std::size_t seg_len = std::min(
        total - pos, static_cast<std::size_t>(std::llround(dur * fs)) + 1);
    const double fade = std::min(0.02 * fs, seg_len / 2.0);

    if (voiced) {
      const double f0 = f0_base * rng.uniform(0.85, 1.15);
      const double vib_rate = rng.uniform(3.0, 6.0);
      const double vib_phase = rng.uniform(0.0, kTwoPi);
      const int num_harm =
          std::max(1, static_cast<int>(std::floor(4000.0 / f0)));
      std::vector<double> amp(num_harm), phase(num_harm);
      for (int h = 0; h < num_harm; ++h) {
        const double fh = f0 * (h + 1);
        const double bump1 = std::exp(-std::pow((fh - formant1) / 250.0, 2));
        const double bump2 = std::exp(-std::pow((fh - formant2) / 350.0, 2));
        amp[h] = (1.0 / (h + 1)) * (0.25 + bump1 + 0.7 * bump2);
        phase[h] = rng.uniform(0.0, kTwoPi);
      }
      for (std::size_t n = 0; n < seg_len; ++n) {
        const double tt = static_cast<double>(n) / fs;
        const double f0_now =
            f0 * (1.0 + 0.04 * std::sin(kTwoPi * vib_rate * tt + vib_phase));
        double v = 0.0;
        for (int h = 0; h < num_harm; ++h) {
          phase[h] += kTwoPi * f0_now * (h + 1) / fs;
          v += amp[h] * std::sin(phase[h]);
        }
        double env = 1.0;
        if (n < fade) env = 0.5 - 0.5 * std::cos(kPi * n / fade);
        if (seg_len - 1 - n < fade)
          env = std::min(env, 0.5 - 0.5 * std::cos(kPi * (seg_len - 1 - n) / fade));
        w.samples[pos + n] += 0.15 * env * v;
      }
    } else if (unvoiced) {
      for (std::size_t n = 0; n < seg_len; ++n) {
        const double x = rng.normal();
        const double hp = x - 0.7 * prev_noise;  // high-tilt fricative noise
        prev_noise = x;
        double env = 1.0;
        if (n < fade) env = 0.5 - 0.5 * std::cos(kPi * n / fade);
        if (seg_len - 1 - n < fade)
          env = std::min(env, 0.5 - 0.5 * std::cos(kPi * (seg_len - 1 - n) / fade));
        w.samples[pos + n] += 0.08 * env * hp;
      }
    }
    pos += seg_len;
  }

  // Normalize to a fixed RMS over nonzero content, then cap the peak.
  double e = 0.0;
  for (double v : w.samples) e += v * v;
  if (e > 0) {
    double g = 0.08 / std::sqrt(e / static_cast<double>(total));
    double peak = 0.0;
    for (double v : w.samples) peak = std::max(peak, std::abs(v * g));
    if (peak > 0.97) g *= 0.97 / peak;
    for (double& v : w.samples) v *= g;
  }
  return w;
}

}  // namespace sf3d

#endif  // SF3D_SYNTH_HPP_
