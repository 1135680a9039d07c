// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_SCENARIO_HPP_
#define SF3D_SCENARIO_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/fft.hpp"
#include "sf3d/geometry.hpp"
#include "sf3d/room.hpp"
#include "sf3d/stft.hpp"

// Multi-speaker scene descriptions: a room, a microphone array, and one
// target plus one or more interfering sources with known positions. Scenes
// are sampled deterministically from a seed and rendered by convolving dry
// signals with image-source RIRs.

namespace sf3d {

struct SourceSpec {
  std::string role;        // "target" or "interference"
  std::string clean_name;  // identifier of the dry signal (file name or tag)
  Vec3 position;
  SourceLocation location;  // relative to the array reference point
};

struct Scenario {
  std::uint64_t seed = 0;
  RoomSpec room;
  MicrophoneArray array;
  std::vector<SourceSpec> sources;
  double sir_db = 0.0;
  std::string delay_interp = "nearest";  // "nearest" or "sinc8"

  const SourceSpec& target() const {
    for (const auto& s : sources)
      if (s.role == "target") return s;
    throw Error("Scenario: no target source");
  }

  std::vector<const SourceSpec*> interferers() const {
    std::vector<const SourceSpec*> out;
    for (const auto& s : sources)
      if (s.role != "target") out.push_back(&s);
    return out;
  }

  void validate() const {
    room.validate();
    array.validate();
    check(!sources.empty(), "Scenario: needs at least one source");
    int targets = 0;
    for (const auto& s : sources) {
      check(s.role == "target" || s.role == "interference",
            "Scenario: unknown source role '" + s.role + "'");
      if (s.role == "target") ++targets;
      check(room.contains(s.position), "Scenario: source outside room");
    }
    check(targets == 1, "Scenario: exactly one target source required");
    for (const auto& m : array.positions)
      check(room.contains(m), "Scenario: microphone outside room");
    check(delay_interp == "nearest" || delay_interp == "sinc8",
          "Scenario: unknown delay_interp '" + delay_interp + "'");
  }
};

struct SamplingRanges {
  Vec3 room_min{3, 3, 3};
  Vec3 room_max{10, 8, 5};
  double t60_min = 0.05, t60_max = 0.7;
  double sir_min = -6.0, sir_max = 6.0;
  int num_interferers = 1;
  double array_height_min = 1.0, array_height_max = 1.6;
  double azimuth_min = 0.0, azimuth_max = kPi;
  double elevation_min = -0.35, elevation_max = 0.35;  // radians
  double distance_min = 0.5, distance_max = 3.5;
  double wall_margin = 0.1;     // sources and mics keep this clearance
  double min_source_gap = 0.3;  // min spacing between any two sources

  // Constrained mode: interferers share the target's azimuth within
  // max_azimuth_diff but differ in range by at least min_distance_diff,
  // isolating distance as the separating cue.
  bool close_azimuth = false;
  double max_azimuth_diff = 15.0 * kPi / 180.0;
  double min_distance_diff = 1.0;

  static SamplingRanges defaults() { return SamplingRanges{}; }

  static SamplingRanges close_azimuth_preset() {
    SamplingRanges r;
    r.room_min = Vec3{6, 5, 2.8};
    r.room_max = Vec3{10, 8, 5};
    r.t60_min = 0.1;
    r.t60_max = 0.4;
    r.sir_min = 0.0;
    r.sir_max = 0.0;
    // Keep sources away from endfire, where wavefront curvature (the
    // distance cue) collapses.
    r.azimuth_min = 50.0 * kPi / 180.0;
    r.azimuth_max = 130.0 * kPi / 180.0;
    r.elevation_min = -0.25;
    r.elevation_max = 0.25;
    r.distance_min = 0.7;
    r.distance_max = 1.6;
    r.close_azimuth = true;
    return r;
  }
};

namespace detail {

inline bool placement_ok(const Vec3& p, const RoomSpec& room,
                         const MicrophoneArray& array, double margin) {
  if (!room.contains(p, margin)) return false;
  for (const auto& m : array.positions)
    if (distance(p, m) < 0.2) return false;
  return true;
}

}  // namespace detail

// Deterministic scene sampler. The array lies along +x near the y = 0 wall
// so that all sampled azimuths in (0, pi) point into the room. Throws after
// a bounded number of rejection rounds.
inline Scenario sample_scenario(std::uint64_t seed,
                                const SamplingRanges& ranges = SamplingRanges::defaults()) {
  check(ranges.num_interferers >= 1 && ranges.num_interferers <= 3,
        "sample_scenario: num_interferers must be in [1, 3]");
  Rng rng(seed);
  const MicrophoneArray proto = default_array();
  const double aperture =
      proto.positions.back().x - proto.positions.front().x;

  constexpr int kMaxRounds = 64;
  for (int round = 0; round < kMaxRounds; ++round) {
    Scenario sc;
    sc.seed = seed;
    sc.room.dims.x = rng.uniform(ranges.room_min.x, ranges.room_max.x);
    sc.room.dims.y = rng.uniform(ranges.room_min.y, ranges.room_max.y);
    sc.room.dims.z = rng.uniform(ranges.room_min.z, ranges.room_max.z);
    sc.room.t60 = rng.uniform(ranges.t60_min, ranges.t60_max);
    sc.sir_db = rng.uniform(ranges.sir_min, ranges.sir_max);

    const double m = ranges.wall_margin;
    const double ox_max = sc.room.dims.x - m - 0.05 - aperture;
    const double ox_min = m + 0.05;
    if (ox_max <= ox_min) continue;
    const double ox = rng.uniform(ox_min, ox_max);
    const double oy = rng.uniform(m + 0.2, std::min(1.0, sc.room.dims.y / 3.0));
    const double oz_hi =
        std::min(ranges.array_height_max, sc.room.dims.z - m - 0.05);
    if (oz_hi <= ranges.array_height_min) continue;
    const double oz = rng.uniform(ranges.array_height_min, oz_hi);
    sc.array = proto.placed_at(Vec3{ox, oy, oz});

    bool ok = true;
    std::vector<Vec3> placed;

    auto try_place = [&](const SourceLocation& loc) -> bool {
      Vec3 p = locate(loc, sc.array);
      if (!detail::placement_ok(p, sc.room, sc.array, m)) return false;
      for (const auto& q : placed)
        if (distance(p, q) < ranges.min_source_gap) return false;
      return true;
    };

    SourceLocation tgt;
    bool found = false;
    for (int k = 0; k < 200 && !found; ++k) {
      tgt.azimuth = rng.uniform(ranges.azimuth_min, ranges.azimuth_max);
      tgt.elevation = rng.uniform(ranges.elevation_min, ranges.elevation_max);
      tgt.distance = rng.uniform(ranges.distance_min, ranges.distance_max);
      found = try_place(tgt);
    }
    if (!found) continue;
    SourceSpec t;
    t.role = "target";
    t.location = tgt;
    t.position = locate(tgt, sc.array);
    sc.sources.push_back(t);
    placed.push_back(t.position);

    for (int i = 0; i < ranges.num_interferers && ok; ++i) {
      SourceLocation loc;
      bool placed_i = false;
      for (int k = 0; k < 200 && !placed_i; ++k) {
        if (ranges.close_azimuth) {
          const double da = rng.uniform(-ranges.max_azimuth_diff * 0.95,
                                        ranges.max_azimuth_diff * 0.95);
          loc.azimuth = std::clamp(tgt.azimuth + da, ranges.azimuth_min,
                                   ranges.azimuth_max);
          loc.elevation =
              rng.uniform(ranges.elevation_min, ranges.elevation_max);
          const double dd =
              rng.uniform(ranges.min_distance_diff, ranges.min_distance_diff + 1.2);
          loc.distance = rng.uniform() < 0.5 ? tgt.distance + dd
                                             : tgt.distance - dd;
          if (loc.distance < 0.4) loc.distance = tgt.distance + dd;
        } else {
          loc.azimuth = rng.uniform(ranges.azimuth_min, ranges.azimuth_max);
          loc.elevation =
              rng.uniform(ranges.elevation_min, ranges.elevation_max);
          loc.distance = rng.uniform(ranges.distance_min, ranges.distance_max);
        }
        placed_i = try_place(loc);
      }
      if (!placed_i) {
        ok = false;
        break;
      }
      SourceSpec s;
      s.role = "interference";
      s.location = loc;
      s.position = locate(loc, sc.array);
      sc.sources.push_back(s);
      placed.push_back(s.position);
    }
    if (!ok) continue;

    sc.validate();
    return sc;
  }
  throw Error("sample_scenario: no valid placement after bounded retries (seed " +
              std::to_string(seed) + ")");
}

struct RenderedScene {
  // mixture[m] and images[s][m] share one length; summing images over s
  // reproduces the mixture exactly.
  std::vector<Waveform> mixture;
  std::vector<std::vector<Waveform>> images;
};

namespace detail {

inline double energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

}  // namespace detail

// Convolves each dry signal with its per-microphone RIR, scales interferers
// to hit the requested target-to-interferer energy ratio at microphone 0,
// and sums. cleans[i] pairs with scenario.sources[i].
inline RenderedScene render_scenario(const Scenario& sc,
                                     const std::vector<Waveform>& cleans,
                                     int max_order = -1) {
  sc.validate();
  check(cleans.size() == sc.sources.size(),
        "render_scenario: need one dry signal per source");
  const int fs = cleans.front().sample_rate;
  for (const auto& w : cleans) {
    check(w.sample_rate == fs, "render_scenario: sample rates differ");
    check(!w.samples.empty(), "render_scenario: empty dry signal");
  }

  IsmOptions opts;
  opts.interp = sc.delay_interp == "sinc8" ? DelayInterp::kSinc8
                                           : DelayInterp::kNearest;
  // One wall coefficient per room, shared across every source/mic RIR.
  if (sc.room.t60 > 0.0 && max_order != 0)
    opts.beta = reflection_coeff(sc.room, opts.absorption);

  const std::size_t num_mics = sc.array.positions.size();
  std::vector<std::vector<std::vector<double>>> img(sc.sources.size());
  std::size_t out_len = 0;
  for (std::size_t s = 0; s < sc.sources.size(); ++s) {
    img[s].resize(num_mics);
    for (std::size_t mch = 0; mch < num_mics; ++mch) {
      const Rir rir = ism_rir(sc.room, sc.sources[s].position,
                              sc.array.positions[mch], max_order, fs, opts);
      img[s][mch] = fft_convolve(cleans[s].samples, rir.taps);
      out_len = std::max(out_len, img[s][mch].size());
    }
  }
  for (auto& per_mic : img)
    for (auto& x : per_mic) x.resize(out_len, 0.0);

  std::size_t target_idx = sc.sources.size();
  for (std::size_t s = 0; s < sc.sources.size(); ++s)
    if (sc.sources[s].role == "target") target_idx = s;
  const double target_e = detail::energy(img[target_idx][0]);
  check(target_e > 0, "render_scenario: target is silent at microphone 0");

  for (std::size_t s = 0; s < sc.sources.size(); ++s) {
    if (s == target_idx) continue;
    const double e = detail::energy(img[s][0]);
    check(e > 0, "render_scenario: interferer is silent at microphone 0");
    const double gain =
        std::sqrt(target_e / (e * std::pow(10.0, sc.sir_db / 10.0)));
    for (auto& x : img[s])
      for (double& v : x) v *= gain;
  }

  RenderedScene out;
  out.images.resize(sc.sources.size());
  for (std::size_t s = 0; s < sc.sources.size(); ++s) {
    out.images[s].resize(num_mics);
    for (std::size_t mch = 0; mch < num_mics; ++mch) {
      out.images[s][mch].sample_rate = fs;
      out.images[s][mch].samples = std::move(img[s][mch]);
    }
  }
  out.mixture.resize(num_mics);
  for (std::size_t mch = 0; mch < num_mics; ++mch) {
    out.mixture[mch].sample_rate = fs;
    out.mixture[mch].samples.assign(out_len, 0.0);
    for (std::size_t s = 0; s < sc.sources.size(); ++s)
      for (std::size_t n = 0; n < out_len; ++n)
        out.mixture[mch].samples[n] += out.images[s][mch].samples[n];
  }
  return out;
}

}  // namespace sf3d

#endif  // SF3D_SCENARIO_HPP_
