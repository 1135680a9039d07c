// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_FEATURE_IO_HPP_
#define SF3D_FEATURE_IO_HPP_

#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/spatial.hpp"
#include "sf3d/wav.hpp"

// Feature matrices on disk: a short text header followed by the raw
// row-major float32 (little-endian) payload.
//
//   SF3DF1
//   layout <name>
//   rows <T>
//   cols <D>
//   dtype f32le
//   blocks <name>:<width>,<name>:<width>,...
//   digest <16 hex chars>        extraction-config fingerprint
//   config <single JSON line>    optional, human-readable provenance
//   data
//   <rows*cols*4 bytes>
//
// The digest pins the STFT geometry, pair list, and TPD convention that
// produced the features; readers can demand a match to reject stale files.

namespace sf3d {

struct FeatureFile {
  FeatureMatrix features;
  std::string digest;  // 16 hex chars, "0" * 16 when absent
  std::string config_line;
};

inline void write_features(const std::string& path, const FeatureMatrix& fm,
                           const std::string& digest,
                           const std::string& config_line = "") {
  fm.validate();
  check(digest.size() == 16, "write_features: digest must be 16 hex chars");
  check(config_line.find('\n') == std::string::npos,
        "write_features: config must be a single line");
  std::string out;
  out += "SF3DF1\n";
  out += "layout " + layout_name(fm.layout) + "\n";
  out += "rows " + std::to_string(fm.data.rows()) + "\n";
  out += "cols " + std::to_string(fm.data.cols()) + "\n";
  out += "dtype f32le\n";
  out += "blocks ";
  for (std::size_t i = 0; i < fm.manifest.size(); ++i) {
    if (i) out += ",";
    out += fm.manifest[i].first + ":" + std::to_string(fm.manifest[i].second);
  }
  out += "\n";
  out += "digest " + digest + "\n";
  if (!config_line.empty()) out += "config " + config_line + "\n";
  out += "data\n";
  out.reserve(out.size() + fm.data.size() * 4);
  for (std::size_t i = 0; i < fm.data.size(); ++i)
    detail::put_u32(out, std::bit_cast<std::uint32_t>(fm.data.data()[i]));
  detail::write_file(path, out);
}

// Set expected_digest to enforce that the file was produced under the same
// extraction config; pass "" to accept any.
inline FeatureFile read_features(const std::string& path,
                                 const std::string& expected_digest = "") {
  const std::string data = detail::read_file(path);

  std::size_t pos = 0;
  auto next_line = [&]() -> std::string {
    check(pos < data.size(), "feature file: truncated header (byte " +
                                 std::to_string(pos) + "): " + path);
    const std::size_t nl = data.find('\n', pos);
    check(nl != std::string::npos, "feature file: unterminated header line at byte " +
                                       std::to_string(pos) + ": " + path);
    std::string line = data.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
  };

  check(next_line() == "SF3DF1", "feature file: bad magic: " + path);
  FeatureFile ff;
  std::size_t rows = 0, cols = 0;
  bool have_rows = false, have_cols = false, have_dtype = false;
  std::string layout_str, blocks_str;
  ff.digest.assign(16, '0');
  for (;;) {
    const std::string line = next_line();
    if (line == "data") break;
    const std::size_t sp = line.find(' ');
    check(sp != std::string::npos, "feature file: malformed header line '" +
                                       line + "': " + path);
    const std::string key = line.substr(0, sp);
    const std::string val = line.substr(sp + 1);
    if (key == "layout") {
      layout_str = val;
    } else if (key == "rows") {
      rows = static_cast<std::size_t>(std::stoull(val));
      have_rows = true;
    } else if (key == "cols") {
      cols = static_cast<std::size_t>(std::stoull(val));
      have_cols = true;
    } else if (key == "dtype") {
      check(val == "f32le", "feature file: unsupported dtype '" + val +
                                "': " + path);
      have_dtype = true;
    } else if (key == "blocks") {
      blocks_str = val;
    } else if (key == "digest") {
      check(val.size() == 16, "feature file: digest must be 16 hex chars: " + path);
      ff.digest = val;
    } else if (key == "config") {
      ff.config_line = val;
    } else {
      throw Error("feature file: unknown header key '" + key + "': " + path);
    }
  }
  check(have_rows && have_cols && have_dtype && !layout_str.empty(),
        "feature file: incomplete header: " + path);

  if (!expected_digest.empty()) {
    check(ff.digest == expected_digest,
          "feature file: digest mismatch (file " + ff.digest + ", expected " +
              expected_digest + "); re-extract with the current config: " + path);
  }

  FeatureMatrix& fm = ff.features;
  fm.layout = layout_from_name(layout_str);
  std::stringstream bs(blocks_str);
  std::string tok;
  std::size_t width_sum = 0;
  while (std::getline(bs, tok, ',')) {
    const std::size_t colon = tok.rfind(':');
    check(colon != std::string::npos,
          "feature file: malformed block entry '" + tok + "': " + path);
    const std::string name = tok.substr(0, colon);
    const std::size_t width =
        static_cast<std::size_t>(std::stoull(tok.substr(colon + 1)));
    fm.manifest.emplace_back(name, width);
    width_sum += width;
  }
  check(width_sum == cols, "feature file: block widths sum to " +
                               std::to_string(width_sum) + " but cols is " +
                               std::to_string(cols) + ": " + path);

  const std::size_t want = rows * cols * 4;
  const std::size_t have = data.size() - pos;
  check(have == want, "feature file: payload is " + std::to_string(have) +
                          " bytes, expected " + std::to_string(want) + ": " +
                          path);
  fm.data = MatF(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i)
    fm.data.data()[i] =
        std::bit_cast<float>(detail::get_u32(data, pos + 4 * i));
  fm.validate();
  return ff;
}

}  // namespace sf3d

#endif  // SF3D_FEATURE_IO_HPP_
