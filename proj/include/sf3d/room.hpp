// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_ROOM_HPP_
#define SF3D_ROOM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/geometry.hpp"
#include "sf3d/stft.hpp"

// Rectangular-room impulse responses by the image-source method: mirror
// the source across the walls, attenuate each image by the wall
// reflections it crossed and by 1/(4*pi*distance), and place it at its
// propagation delay.

namespace sf3d {

struct RoomSpec {
  Vec3 dims{5, 4, 3};        // meters
  double t60 = 0.3;          // seconds; 0 means anechoic (direct path only)
  double sound_speed = 343.0;

  double volume() const { return dims.x * dims.y * dims.z; }
  double surface() const {
    return 2.0 * (dims.x * dims.y + dims.y * dims.z + dims.x * dims.z);
  }

  void validate() const {
    check(dims.x > 0 && dims.y > 0 && dims.z > 0,
          "RoomSpec: dimensions must be positive");
    check(t60 >= 0, "RoomSpec: t60 must be non-negative");
    check(sound_speed > 0, "RoomSpec: sound speed must be positive");
  }

  bool contains(const Vec3& p, double margin = 0.0) const {
    return p.x >= margin && p.x <= dims.x - margin && p.y >= margin &&
           p.y <= dims.y - margin && p.z >= margin && p.z <= dims.z - margin;
  }
};

enum class AbsorptionModel { kSabine, kEyring, kCalibrated };

// Smallest T60 a room supports under the Sabine relation (alpha = 1).
inline double sabine_t60_floor(const RoomSpec& room) {
  return 0.161 * room.volume() / room.surface();
}

inline double calibrated_beta(const RoomSpec& room, int max_lattice = 40,
                              double length_factor = 1.5);

// Uniform wall reflection coefficient realizing the requested decay time.
// Sabine: alpha = 0.161*V/(S*t60). Eyring: alpha = 1 - exp(-0.161*V/(S*t60)),
// which stays valid for short decay times where Sabine's alpha reaches 1.
// Both closed forms leave the measured decay of simulated non-cubic rooms
// slower than requested, so the simulation default is the calibrated model
// (see calibrated_beta).
inline double reflection_coeff(const RoomSpec& room,
                               AbsorptionModel model = AbsorptionModel::kSabine) {
  room.validate();
  check(room.t60 > 0, "reflection_coeff: t60 must be positive");
  if (model == AbsorptionModel::kCalibrated) return calibrated_beta(room);
  const double sabine = 0.161 * room.volume() / (room.surface() * room.t60);
  double alpha;
  if (model == AbsorptionModel::kSabine) {
    check(sabine < 1.0, "reflection_coeff: room too small for requested T60");
    alpha = sabine;
  } else {
    alpha = 1.0 - std::exp(-sabine);
  }
  check(alpha > 0.0 && alpha < 1.0, "reflection_coeff: absorption out of (0,1)");
  return std::sqrt(1.0 - alpha);
}

struct Rir {
  std::vector<double> taps;
  int sample_rate = 16000;
};

enum class DelayInterp { kNearest, kSinc8 };

struct IsmOptions {
  DelayInterp interp = DelayInterp::kNearest;
  AbsorptionModel absorption = AbsorptionModel::kCalibrated;
  // Explicit wall reflection coefficient in [0, 1); negative values derive
  // it from `absorption` per call. Callers building many RIRs for one room
  // should resolve it once and set it here.
  double beta = -1.0;
  // RIR length in units of t60. Images arriving later are dropped.
  double length_factor = 1.5;
  // Per-axis image lattice cap; keeps worst-case cost bounded.
  int max_lattice = 40;
};

namespace detail {

struct AxisImage {
  double delta;   // image coordinate minus receiver coordinate
  int beta_exp;   // wall crossings along this axis
  int order;      // reflection order contribution |2n - q|
};

inline std::vector<AxisImage> axis_images(double src, double rcv, double dim,
                                          int lattice_n) {
  std::vector<AxisImage> out;
  out.reserve(2 * (2 * lattice_n + 1));
  for (int n = -lattice_n; n <= lattice_n; ++n) {
    for (int q = 0; q <= 1; ++q) {
      AxisImage img;
      img.delta = 2.0 * n * dim + (1 - 2 * q) * src - rcv;
      img.beta_exp = std::abs(n - q) + std::abs(n);
      img.order = std::abs(2 * n - q);
      out.push_back(img);
    }
  }
  return out;
}

// Hann-windowed sinc over +-4 samples; phase-accurate fractional delays.
inline void add_tap_sinc8(std::vector<double>& taps, double delay,
                          double gain) {
  const int i0 = static_cast<int>(std::floor(delay));
  for (int n = -3; n <= 4; ++n) {
    const int idx = i0 + n;
    if (idx < 0 || idx >= static_cast<int>(taps.size())) continue;
    const double x = static_cast<double>(idx) - delay;
    const double w = 0.5 * (1.0 + std::cos(kPi * x / 4.0));
    const double s = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    taps[idx] += gain * s * w;
  }
}

}  // namespace detail

// Uniform wall reflection coefficient whose simulated Schroeder curve
// crosses -60 dB at t60. Closed-form Sabine/Eyring coefficients overshoot
// the crossing in non-cubic rooms: image chains along the longest dimension
// cross fewer walls per metre and dominate the late tail. The image lattice
// is tabulated once as (wall crossings) x (arrival-time bucket) energies,
// then beta is bisected until the tabulated -60 dB point lands on t60.
inline double calibrated_beta(const RoomSpec& room, int max_lattice,
                              double length_factor) {
  room.validate();
  check(room.t60 > 0, "calibrated_beta: t60 must be positive");
  check(max_lattice > 0 && length_factor > 0,
        "calibrated_beta: lattice bounds must be positive");
  // Source and receiver at opposite quarter points: a representative
  // spacing, so the direct path does not dominate the energy reference.
  const Vec3 src{0.25 * room.dims.x, 0.25 * room.dims.y, 0.25 * room.dims.z};
  const Vec3 rcv{0.75 * room.dims.x, 0.75 * room.dims.y, 0.75 * room.dims.z};
  const double c = room.sound_speed;
  const double horizon_s = length_factor * room.t60;
  const double reach_m = horizon_s * c;
  auto extent = [&](double dim) {
    return std::min(static_cast<int>(std::ceil(reach_m / (2.0 * dim))),
                    max_lattice);
  };
  const auto xs =
      detail::axis_images(src.x, rcv.x, room.dims.x, extent(room.dims.x));
  const auto ys =
      detail::axis_images(src.y, rcv.y, room.dims.y, extent(room.dims.y));
  const auto zs =
      detail::axis_images(src.z, rcv.z, room.dims.z, extent(room.dims.z));
  auto max_exp = [](const std::vector<detail::AxisImage>& v) {
    int m = 0;
    for (const auto& i : v) m = std::max(m, i.beta_exp);
    return m;
  };
  const int kmax = max_exp(xs) + max_exp(ys) + max_exp(zs);

  constexpr double kBucketS = 1e-3;
  const int buckets = static_cast<int>(std::ceil(horizon_s / kBucketS)) + 1;
  std::vector<double> hist(static_cast<std::size_t>(kmax + 1) * buckets, 0.0);
  for (const auto& xi : xs) {
    for (const auto& yi : ys) {
      const double dxy2 = xi.delta * xi.delta + yi.delta * yi.delta;
      const int exy = xi.beta_exp + yi.beta_exp;
      for (const auto& zi : zs) {
        const double r2 = dxy2 + zi.delta * zi.delta;
        if (r2 < 1e-12) continue;
        const double t = std::sqrt(r2) / c;
        if (t > horizon_s) continue;
        const int b = static_cast<int>(t / kBucketS);
        hist[static_cast<std::size_t>(exy + zi.beta_exp) * buckets + b] +=
            1.0 / r2;
      }
    }
  }

  std::vector<double> decay(buckets);
  auto cross_time = [&](double beta) {
    std::fill(decay.begin(), decay.end(), 0.0);
    const double b2 = beta * beta;
    double bp = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      const double* row = hist.data() + static_cast<std::size_t>(k) * buckets;
      for (int b = 0; b < buckets; ++b) decay[b] += bp * row[b];
      bp *= b2;
    }
    double tail = 0.0;
    for (double e : decay) tail += e;
    const double target = 1e-6 * tail;
    for (int b = 0; b < buckets; ++b) {
      if (tail <= target) return b * kBucketS;
      tail -= decay[b];
    }
    return horizon_s + kBucketS;
  };

  double lo = 1e-4, hi = 1.0 - 1e-9;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cross_time(mid) < room.t60 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Impulse response between one source and one receiver. max_order < 0 lets
// the image lattice grow until image distance exceeds
// sound_speed * length_factor * t60 (capped per axis at max_lattice);
// max_order >= 0 additionally drops images with more than that many total
// wall reflections, so max_order = 0 keeps only the direct path.
inline Rir ism_rir(const RoomSpec& room, const Vec3& src, const Vec3& mic,
                   int max_order, int sample_rate,
                   const IsmOptions& opts = IsmOptions{}) {
  room.validate();
  check(sample_rate > 0, "ism_rir: sample rate must be positive");
  check(room.contains(src) && room.contains(mic),
        "ism_rir: source and microphone must be inside the room");
  const double direct_dist = distance(src, mic);
  check(direct_dist > 1e-9, "ism_rir: source coincides with microphone");

  const double c = room.sound_speed;
  const bool anechoic = room.t60 <= 0.0 || max_order == 0;
  const double tail_seconds =
      room.t60 > 0.0 ? opts.length_factor * room.t60 : 0.0;
  const double max_delay_s =
      std::max(direct_dist / c + 2e-3, anechoic ? 0.0 : tail_seconds);
  const std::size_t num_taps =
      static_cast<std::size_t>(std::ceil(max_delay_s * sample_rate)) + 8;

  Rir rir;
  rir.sample_rate = sample_rate;
  rir.taps.assign(num_taps, 0.0);

  check(opts.beta < 1.0, "ism_rir: reflection coefficient must be below 1");
  const double beta = anechoic ? 0.0
                      : opts.beta >= 0.0
                          ? opts.beta
                          : reflection_coeff(room, opts.absorption);

  const double reach_m = max_delay_s * c;
  auto lattice_extent = [&](double dim) {
    if (anechoic) return 0;
    int n = static_cast<int>(std::ceil(reach_m / (2.0 * dim)));
    if (max_order > 0) n = std::min(n, max_order);
    return std::min(n, opts.max_lattice);
  };

  const auto xs = detail::axis_images(src.x, mic.x, room.dims.x,
                                      lattice_extent(room.dims.x));
  const auto ys = detail::axis_images(src.y, mic.y, room.dims.y,
                                      lattice_extent(room.dims.y));
  const auto zs = detail::axis_images(src.z, mic.z, room.dims.z,
                                      lattice_extent(room.dims.z));

  // beta^k lookup across all reachable exponents.
  const int max_exp = 3 * (2 * opts.max_lattice + 1) + 3;
  std::vector<double> beta_pow(max_exp + 1);
  beta_pow[0] = 1.0;
  for (int i = 1; i <= max_exp; ++i) beta_pow[i] = beta_pow[i - 1] * beta;

  const double max_delay_samples = max_delay_s * sample_rate;
  for (const auto& xi : xs) {
    for (const auto& yi : ys) {
      const double dxy2 = xi.delta * xi.delta + yi.delta * yi.delta;
      const int exy = xi.beta_exp + yi.beta_exp;
      const int oxy = xi.order + yi.order;
      for (const auto& zi : zs) {
        if (max_order >= 0 && oxy + zi.order > max_order) continue;
        const double dist = std::sqrt(dxy2 + zi.delta * zi.delta);
        const double delay = dist / c * sample_rate;
        if (delay > max_delay_samples) continue;
        const double gain = beta_pow[exy + zi.beta_exp] / (4.0 * kPi * dist);
        if (opts.interp == DelayInterp::kSinc8) {
          detail::add_tap_sinc8(rir.taps, delay, gain);
        } else {
          const std::size_t idx =
              static_cast<std::size_t>(std::llround(delay));
          if (idx < rir.taps.size()) rir.taps[idx] += gain;
        }
      }
    }
  }
  return rir;
}

}  // namespace sf3d

#endif  // SF3D_ROOM_HPP_
