// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_STFT_HPP_
#define SF3D_STFT_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/fft.hpp"

namespace sf3d {

struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class WindowKind { kSqrtHann };

// Analysis/synthesis framing. Frames start at t*hop; the tail is
// zero-padded so the last partial frame is kept. No center padding.
struct StftConfig {
  int window_len = 512;
  int hop = 256;
  int fft_size = 512;
  WindowKind window = WindowKind::kSqrtHann;

  // 32 ms window / 16 ms hop at 16 kHz; 257 bins.
  static StftConfig pipelined() { return StftConfig{512, 256, 512}; }
  // 25 ms window / 10 ms hop at 16 kHz; 201 bins.
  static StftConfig all_in_one() { return StftConfig{400, 160, 400}; }

  int bins() const { return fft_size / 2 + 1; }

  std::size_t num_frames(std::size_t num_samples) const {
    return (num_samples + hop - 1) / hop;
  }

  void validate() const {
    check(window_len > 0, "StftConfig: window_len must be positive");
    check(hop > 0, "StftConfig: hop must be positive");
    check(2 * hop <= window_len,
          "StftConfig: hop must be <= window_len/2 so every interior sample "
          "is covered by at least two frames");
    check(fft_size >= window_len, "StftConfig: fft_size must be >= window_len");
  }

  bool operator==(const StftConfig&) const = default;
};

// Square root of the periodic Hann window, i.e. sin(pi*n/N). Used for both
// analysis and synthesis.
inline std::vector<double> make_window(const StftConfig& cfg) {
  std::vector<double> w(cfg.window_len);
  for (int n = 0; n < cfg.window_len; ++n)
    w[n] = std::sin(kPi * n / cfg.window_len);
  return w;
}

struct ComplexSpectrogram {
  MatC data;  // frames x bins
  StftConfig config;
  int sample_rate = 16000;

  std::size_t frames() const { return data.rows(); }
  std::size_t bins() const { return data.cols(); }
};

inline ComplexSpectrogram stft(const Waveform& wave, const StftConfig& cfg) {
  cfg.validate();
  check(!wave.samples.empty(), "stft: empty waveform");
  check(wave.sample_rate > 0, "stft: sample_rate must be positive");
  for (double s : wave.samples)
    check(std::isfinite(s), "stft: waveform contains non-finite samples");

  const std::vector<double> win = make_window(cfg);
  const std::size_t frames = cfg.num_frames(wave.samples.size());
  ComplexSpectrogram spec;
  spec.config = cfg;
  spec.sample_rate = wave.sample_rate;
  spec.data = MatC(frames, cfg.bins());

  std::vector<double> frame(cfg.window_len);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * cfg.hop;
    for (int n = 0; n < cfg.window_len; ++n) {
      const std::size_t idx = start + n;
      frame[n] = idx < wave.samples.size() ? wave.samples[idx] * win[n] : 0.0;
    }
    std::vector<Cplx> bins = rfft(frame, cfg.fft_size);
    std::copy(bins.begin(), bins.end(), spec.data.row(t));
  }
  return spec;
}

// Weighted overlap-add inverse with synthesis-window normalization
// (divide by the accumulated squared window), which reconstructs exactly
// for any hop <= window_len/2. Output spans (T-1)*hop + window_len samples;
// the leading/trailing window_len samples are edge-affected.
inline Waveform istft(const ComplexSpectrogram& spec) {
  const StftConfig& cfg = spec.config;
  cfg.validate();
  check(spec.bins() == static_cast<std::size_t>(cfg.bins()),
        "istft: bin count does not match config");

  const std::vector<double> win = make_window(cfg);
  const std::size_t frames = spec.frames();
  const std::size_t out_len =
      frames == 0 ? 0 : (frames - 1) * cfg.hop + cfg.window_len;
  std::vector<double> acc(out_len, 0.0);
  std::vector<double> norm(out_len, 0.0);

  std::vector<Cplx> bins(cfg.bins());
  for (std::size_t t = 0; t < frames; ++t) {
    std::copy(spec.data.row(t), spec.data.row(t) + cfg.bins(), bins.begin());
    std::vector<double> frame = irfft(bins, cfg.fft_size);
    const std::size_t start = t * cfg.hop;
    for (int n = 0; n < cfg.window_len; ++n) {
      acc[start + n] += frame[n] * win[n];
      norm[start + n] += win[n] * win[n];
    }
  }
  Waveform out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(out_len);
  for (std::size_t i = 0; i < out_len; ++i)
    out.samples[i] = norm[i] > 1e-10 ? acc[i] / norm[i] : acc[i];
  return out;
}

// Log power spectrum, log(max(|Y|^2, floor_eps)). Natural log.
inline MatD lps(const ComplexSpectrogram& spec, double floor_eps = 1e-12) {
  check(floor_eps > 0, "lps: floor_eps must be positive");
  MatD out(spec.frames(), spec.bins());
  for (std::size_t t = 0; t < spec.frames(); ++t)
    for (std::size_t f = 0; f < spec.bins(); ++f)
      out(t, f) = std::log(std::max(std::norm(spec.data(t, f)), floor_eps));
  return out;
}

}  // namespace sf3d

#endif  // SF3D_STFT_HPP_
