// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_GEOMETRY_HPP_
#define SF3D_GEOMETRY_HPP_

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "sf3d/common.hpp"

// Array/source geometry and target-dependent phase differences (TPD).
//
// Conventions, fixed across the toolkit and checked end-to-end by the
// anechoic simulation tests:
//   * Bin k maps to physical frequency f_k = k*fs/fft_size with
//     fft_size = 2*(F-1).
//   * TPD is the phase difference a source at the given location would
//     produce under IPD = angle(Y[m1]) - angle(Y[m2]):
//       TPD[p,k] = 2*pi*f_k*(d_m2 - d_m1)/c,
//     d_mi the source-to-microphone path length. A longer path to m2 means
//     m1 leads in phase, which is a positive IPD.
//   * Azimuth is measured from the array axis (+x); elevation from the
//     horizontal plane. A linear array cannot tell +y from -y (cone
//     ambiguity), so azimuth lives in [0, pi].

namespace sf3d {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

struct MicPair {
  int m1 = 0;
  int m2 = 1;

  bool operator==(const MicPair&) const = default;
};

struct MicrophoneArray {
  std::vector<Vec3> positions;
  // The query point locations are measured from (the "camera"). Defaults
  // to the array centroid.
  Vec3 reference_point;

  std::size_t size() const { return positions.size(); }

  static MicrophoneArray from_positions(std::vector<Vec3> pos) {
    check(pos.size() >= 2, "array: need at least two microphones");
    Vec3 c{0, 0, 0};
    for (const Vec3& p : pos) c = c + p;
    c = c * (1.0 / pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = i + 1; j < pos.size(); ++j)
        check(distance(pos[i], pos[j]) > 1e-9,
              "array: microphone positions must be distinct");
    return MicrophoneArray{std::move(pos), c};
  }

  // Linear array along +x starting at the origin, given inter-mic spacings.
  static MicrophoneArray linear_from_spacings(const std::vector<double>& gaps) {
    std::vector<Vec3> pos;
    double x = 0.0;
    pos.push_back({0, 0, 0});
    for (double g : gaps) {
      x += g;
      pos.push_back({x, 0, 0});
    }
    return from_positions(std::move(pos));
  }

  // Translate all microphones and the reference point.
  MicrophoneArray placed_at(const Vec3& offset) const {
    MicrophoneArray out = *this;
    for (Vec3& p : out.positions) p = p + offset;
    out.reference_point = out.reference_point + offset;
    return out;
  }

  void validate() const {
    check(positions.size() >= 2, "array: need at least two microphones");
    for (std::size_t i = 0; i < positions.size(); ++i)
      for (std::size_t j = i + 1; j < positions.size(); ++j)
        check(distance(positions[i], positions[j]) > 1e-9,
              "array: microphone positions must be distinct");
  }
};

// The toolkit's default sensor: 8 mics on a line, spacings
// 15-10-5-20-5-10-15 cm, camera at the centroid.
inline MicrophoneArray default_array() {
  return MicrophoneArray::linear_from_spacings(
      {0.15, 0.10, 0.05, 0.20, 0.05, 0.10, 0.15});
}

// Default pair selection. The selected set spans apertures from 20 to
// 80 cm; (4,7) and (0,3) are offset from the array center, which is what
// gives near-field distance sensitivity.
inline std::vector<MicPair> default_pairs() {
  return {{0, 7}, {1, 6}, {2, 5}, {3, 4}, {4, 7}, {0, 3}};
}

struct SourceLocation {
  double azimuth = 0.0;    // radians, [0, pi] for a linear array
  double elevation = 0.0;  // radians, [-pi/2, pi/2]
  double distance = 1.0;   // meters from the reference point, > 0

  void validate() const {
    check(distance > 0, "SourceLocation: distance must be positive");
    check(elevation >= -kPi / 2 - 1e-12 && elevation <= kPi / 2 + 1e-12,
          "SourceLocation: elevation out of [-pi/2, pi/2]");
  }
};

// Cartesian realization of (azimuth, elevation, distance) about the
// reference point, array axis = +x.
inline Vec3 locate(const SourceLocation& loc, const MicrophoneArray& array) {
  loc.validate();
  const double ce = std::cos(loc.elevation);
  return array.reference_point +
         Vec3{ce * std::cos(loc.azimuth), ce * std::sin(loc.azimuth),
              std::sin(loc.elevation)} *
             loc.distance;
}

namespace detail {

inline void check_pairs(const std::vector<MicPair>& pairs,
                        const MicrophoneArray& array) {
  check(!pairs.empty(), "tpd: empty pair list");
  for (const MicPair& p : pairs) {
    check(p.m1 != p.m2, "tpd: pair with identical microphones");
    check(p.m1 >= 0 && p.m2 >= 0 &&
              p.m1 < static_cast<int>(array.size()) &&
              p.m2 < static_cast<int>(array.size()),
          "tpd: microphone index out of range");
  }
}

}  // namespace detail

// Signed along-axis offsets of each microphone from the reference point.
// Requires a collinear array; the axis points from the first to the last
// microphone.
inline std::vector<double> mic_offsets(const MicrophoneArray& array) {
  check(array.size() >= 2, "mic_offsets: need at least two microphones");
  const Vec3 axis_raw = array.positions.back() - array.positions.front();
  const double len = axis_raw.norm();
  check(len > 1e-9, "mic_offsets: degenerate array axis");
  const Vec3 axis = axis_raw * (1.0 / len);
  for (const Vec3& p : array.positions) {
    const Vec3 d = p - array.positions.front();
    check(d.cross(axis).norm() <= 1e-9 * std::max(1.0, d.norm()),
          "mic_offsets: array is not collinear");
  }
  std::vector<double> offsets;
  offsets.reserve(array.size());
  for (const Vec3& p : array.positions)
    offsets.push_back((p - array.reference_point).dot(axis));
  return offsets;
}

struct TpdMatrix {
  MatD data;  // pairs x bins, radians; time-invariant for a static source
  std::vector<MicPair> pairs;

  std::size_t num_pairs() const { return data.rows(); }
  std::size_t bins() const { return data.cols(); }
};

// Far-field (plane wave) TPD from azimuth alone:
//   TPD[p,k] = 2*pi*f_k*(x_m1 - x_m2)*cos(azimuth)/c.
// This is the d_o -> infinity limit of tpd_3d; the (x_m1 - x_m2) factor
// keeps the IPD sign convention above.
inline TpdMatrix tpd_1d(double azimuth, const std::vector<MicPair>& pairs,
                        const MicrophoneArray& array, int bins,
                        int sample_rate, double sound_speed = 343.0) {
  detail::check_pairs(pairs, array);
  check(bins >= 2, "tpd_1d: need at least two bins");
  check(sound_speed > 0, "tpd_1d: sound speed must be positive");
  const std::vector<double> offsets = mic_offsets(array);  // checks linearity

  TpdMatrix tpd;
  tpd.pairs = pairs;
  tpd.data = MatD(pairs.size(), bins);
  const int fft_size = 2 * (bins - 1);
  const double cos_az = std::cos(azimuth);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double sep = offsets[pairs[p].m1] - offsets[pairs[p].m2];
    for (int k = 0; k < bins; ++k) {
      const double f_k = static_cast<double>(k) * sample_rate / fft_size;
      tpd.data(p, k) = kTwoPi * f_k * sep * cos_az / sound_speed;
    }
  }
  return tpd;
}

// Full 3D TPD from exact euclidean path lengths between the located source
// and each microphone. For a linear array with signed offsets o_i this is
//   d_mi = sqrt(d_o^2 + o_i^2 - 2*d_o*o_i*cos(azimuth)*cos(elevation)),
// but the implementation does not assume linearity.
inline TpdMatrix tpd_3d(const SourceLocation& loc,
                        const std::vector<MicPair>& pairs,
                        const MicrophoneArray& array, int bins,
                        int sample_rate, double sound_speed = 343.0) {
  detail::check_pairs(pairs, array);
  check(bins >= 2, "tpd_3d: need at least two bins");
  check(sound_speed > 0, "tpd_3d: sound speed must be positive");
  const Vec3 src = locate(loc, array);

  std::vector<double> dist_to_mic(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) {
    dist_to_mic[i] = distance(src, array.positions[i]);
    check(dist_to_mic[i] > 1e-9,
          "tpd_3d: source coincides with microphone " + std::to_string(i));
  }

  TpdMatrix tpd;
  tpd.pairs = pairs;
  tpd.data = MatD(pairs.size(), bins);
  const int fft_size = 2 * (bins - 1);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double path_diff = dist_to_mic[pairs[p].m2] - dist_to_mic[pairs[p].m1];
    for (int k = 0; k < bins; ++k) {
      const double f_k = static_cast<double>(k) * sample_rate / fft_size;
      tpd.data(p, k) = kTwoPi * f_k * path_diff / sound_speed;
    }
  }
  return tpd;
}

// Frequency above which a pair's phase difference wraps ambiguously,
// c / (2 * spacing).
inline double spatial_alias_freq(const MicPair& pair,
                                 const MicrophoneArray& array,
                                 double sound_speed = 343.0) {
  const double spacing =
      distance(array.positions[pair.m1], array.positions[pair.m2]);
  check(spacing > 0, "spatial_alias_freq: zero spacing");
  return sound_speed / (2.0 * spacing);
}

}  // namespace sf3d

#endif  // SF3D_GEOMETRY_HPP_
