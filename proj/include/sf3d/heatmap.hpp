// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_HEATMAP_HPP_
#define SF3D_HEATMAP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "sf3d/common.hpp"
#include "sf3d/wav.hpp"

// Binary PPM (P6) heatmaps of time-frequency matrices: time runs left to
// right, frequency bottom to top. The colormap is fixed so renders are
// byte-stable across runs: values are normalized to [0,1] and mapped
// through piecewise-linear interpolation between the eight anchor colors
// listed in kColormap (dark violet -> orange -> pale yellow).

namespace sf3d {

namespace detail {

// x in [0,1] at anchors i/7.
inline constexpr std::uint8_t kColormap[8][3] = {
    {0, 0, 4},      {34, 12, 64},   {85, 15, 109},  {136, 34, 106},
    {186, 54, 85},  {227, 89, 51},  {249, 140, 10}, {252, 255, 164}};

inline void colorize(double x, std::uint8_t rgb[3]) {
  x = std::clamp(x, 0.0, 1.0);
  const double pos = x * 7.0;
  const int i = std::min(6, static_cast<int>(pos));
  const double f = pos - i;
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<std::uint8_t>(std::lround(
        (1.0 - f) * kColormap[i][c] + f * kColormap[i + 1][c]));
}

}  // namespace detail

// Renders `m` (rows = time frames, cols = frequency bins). vmin/vmax of NaN
// mean "use the data range"; a constant matrix renders as the lowest color.
// The `comment` line (plus the value range) is embedded as a PPM comment.
inline void write_heatmap_ppm(const std::string& path, const MatD& m,
                              double vmin = std::numeric_limits<double>::quiet_NaN(),
                              double vmax = std::numeric_limits<double>::quiet_NaN(),
                              const std::string& comment = "") {
  check(m.rows() > 0 && m.cols() > 0, "heatmap: empty matrix");
  double lo = vmin, hi = vmax;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    double dlo = std::numeric_limits<double>::infinity(), dhi = -dlo;
    for (std::size_t i = 0; i < m.size(); ++i) {
      dlo = std::min(dlo, m.data()[i]);
      dhi = std::max(dhi, m.data()[i]);
    }
    if (!std::isfinite(lo)) lo = dlo;
    if (!std::isfinite(hi)) hi = dhi;
  }
  check(std::isfinite(lo) && std::isfinite(hi), "heatmap: non-finite range");
  const double span = hi > lo ? hi - lo : 1.0;

  const std::size_t width = m.rows();   // time
  const std::size_t height = m.cols();  // frequency
  std::string out = "P6\n";
  if (!comment.empty()) out += "# " + comment + "\n";
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "# range %.9g %.9g\n", lo, hi);
    out += buf;
  }
  out += std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.reserve(out.size() + 3 * width * height);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t f = height - 1 - y;  // top row = highest bin
    for (std::size_t x = 0; x < width; ++x) {
      std::uint8_t rgb[3];
      detail::colorize((m(x, f) - lo) / span, rgb);
      out.push_back(static_cast<char>(rgb[0]));
      out.push_back(static_cast<char>(rgb[1]));
      out.push_back(static_cast<char>(rgb[2]));
    }
  }
  detail::write_file(path, out);
}

}  // namespace sf3d

#endif  // SF3D_HEATMAP_HPP_
