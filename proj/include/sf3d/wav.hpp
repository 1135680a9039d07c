// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_WAV_HPP_
#define SF3D_WAV_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/stft.hpp"

// RIFF/WAVE files: 16-bit PCM and 32-bit IEEE float, any channel count.
// Readers skip unknown chunks and report malformed input with byte offsets.
// Writers can embed a comment via a LIST/INFO ICMT chunk.

namespace sf3d {

enum class WavFormat { kPcm16, kFloat32 };

namespace detail {

inline void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint32_t get_u32(const std::string& s, std::size_t off) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i)
    v = (v << 8) | static_cast<std::uint8_t>(s[off + i]);
  return v;
}

inline std::uint16_t get_u16(const std::string& s, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<std::uint8_t>(s[off]) |
                                    (static_cast<std::uint8_t>(s[off + 1]) << 8));
}

inline void put_f32(std::string& s, float v) {
  put_u32(s, std::bit_cast<std::uint32_t>(v));
}

inline float get_f32(const std::string& s, std::size_t off) {
  return std::bit_cast<float>(get_u32(s, off));
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  check(f.good(), "cannot open file: " + path);
  std::string data((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return data;
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  check(f.good(), "cannot open file for writing: " + path);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  check(f.good(), "write failed: " + path);
}

}  // namespace detail

// channels[i] holds one channel; all channels must share a length and rate.
// PCM16 scales by 32767 and rounds; float32 stores samples verbatim
// (doubles are narrowed to float).
inline void write_wav(const std::string& path,
                      const std::vector<Waveform>& channels,
                      WavFormat format = WavFormat::kFloat32,
                      const std::string& comment = "") {
  check(!channels.empty(), "write_wav: no channels");
  const std::size_t len = channels.front().samples.size();
  const int fs = channels.front().sample_rate;
  for (const auto& ch : channels) {
    check(ch.samples.size() == len, "write_wav: channel lengths differ");
    check(ch.sample_rate == fs, "write_wav: channel sample rates differ");
  }
  const std::uint16_t nch = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t bytes_per = format == WavFormat::kPcm16 ? 2 : 4;
  const std::uint16_t block = static_cast<std::uint16_t>(nch * bytes_per);

  std::string body;
  // fmt chunk.
  body += "fmt ";
  detail::put_u32(body, 16);
  detail::put_u16(body, format == WavFormat::kPcm16 ? 1 : 3);
  detail::put_u16(body, nch);
  detail::put_u32(body, static_cast<std::uint32_t>(fs));
  detail::put_u32(body, static_cast<std::uint32_t>(fs) * block);
  detail::put_u16(body, block);
  detail::put_u16(body, static_cast<std::uint16_t>(bytes_per * 8));
  if (format == WavFormat::kFloat32) {
    body += "fact";
    detail::put_u32(body, 4);
    detail::put_u32(body, static_cast<std::uint32_t>(len));
  }
  if (!comment.empty()) {
    std::string text = comment;
    text.push_back('\0');
    if (text.size() % 2) text.push_back('\0');
    body += "LIST";
    detail::put_u32(body, static_cast<std::uint32_t>(4 + 8 + text.size()));
    body += "INFO";
    body += "ICMT";
    detail::put_u32(body, static_cast<std::uint32_t>(text.size()));
    body += text;
  }
  body += "data";
  detail::put_u32(body, static_cast<std::uint32_t>(len * block));
  for (std::size_t n = 0; n < len; ++n) {
    for (const auto& ch : channels) {
      const double v = ch.samples[n];
      if (format == WavFormat::kPcm16) {
        const double clamped = std::clamp(v, -1.0, 1.0);
        detail::put_u16(body, static_cast<std::uint16_t>(static_cast<std::int16_t>(
                                  std::lround(clamped * 32767.0))));
      } else {
        detail::put_f32(body, static_cast<float>(v));
      }
    }
  }

  std::string out = "RIFF";
  detail::put_u32(out, static_cast<std::uint32_t>(4 + body.size()));
  out += "WAVE";
  out += body;
  detail::write_file(path, out);
}

// Reads every channel. PCM16 maps back by 1/32767; float32 is verbatim.
inline std::vector<Waveform> read_wav(const std::string& path) {
  const std::string data = detail::read_file(path);
  check(data.size() >= 12, "wav: file too short for RIFF header (" + path +
                               ", " + std::to_string(data.size()) + " bytes)");
  check(data.compare(0, 4, "RIFF") == 0, "wav: missing RIFF tag at byte 0: " + path);
  check(data.compare(8, 4, "WAVE") == 0, "wav: missing WAVE tag at byte 8: " + path);

  bool have_fmt = false;
  std::uint16_t audio_format = 0, nch = 0, bits = 0, block = 0;
  std::uint32_t fs = 0;
  std::size_t data_off = 0, data_len = 0;

  std::size_t off = 12;
  while (off + 8 <= data.size()) {
    const std::string id = data.substr(off, 4);
    const std::uint32_t sz = detail::get_u32(data, off + 4);
    const std::size_t payload = off + 8;
    check(payload + sz <= data.size(),
          "wav: chunk '" + id + "' at byte " + std::to_string(off) +
              " claims " + std::to_string(sz) + " bytes but file ends at " +
              std::to_string(data.size()) + ": " + path);
    if (id == "fmt ") {
      check(sz >= 16, "wav: fmt chunk too small at byte " + std::to_string(off));
      audio_format = detail::get_u16(data, payload);
      nch = detail::get_u16(data, payload + 2);
      fs = detail::get_u32(data, payload + 4);
      block = detail::get_u16(data, payload + 12);
      bits = detail::get_u16(data, payload + 14);
      have_fmt = true;
    } else if (id == "data") {
      data_off = payload;
      data_len = sz;
      check(have_fmt, "wav: data chunk before fmt chunk at byte " +
                          std::to_string(off) + ": " + path);
      break;
    }
    off = payload + sz + (sz % 2);  // chunks are word-aligned
  }
  check(have_fmt, "wav: no fmt chunk found: " + path);
  check(data_off != 0, "wav: no data chunk found: " + path);
  check(nch > 0, "wav: zero channels: " + path);
  check(fs > 0, "wav: zero sample rate: " + path);

  std::size_t bytes_per;
  if (audio_format == 1 && bits == 16) {
    bytes_per = 2;
  } else if (audio_format == 3 && bits == 32) {
    bytes_per = 4;
  } else {
    throw Error("wav: unsupported format " + std::to_string(audio_format) +
                "/" + std::to_string(bits) + " bits: " + path);
  }
  check(block == nch * bytes_per, "wav: inconsistent block align: " + path);
  check(data_len % block == 0,
        "wav: data chunk size " + std::to_string(data_len) +
            " is not a multiple of the frame size " + std::to_string(block) +
            ": " + path);

  const std::size_t frames = data_len / block;
  std::vector<Waveform> out(nch);
  for (auto& ch : out) {
    ch.sample_rate = static_cast<int>(fs);
    ch.samples.resize(frames);
  }
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::uint16_t c = 0; c < nch; ++c) {
      const std::size_t p = data_off + n * block + c * bytes_per;
      if (bytes_per == 2) {
        const auto raw = static_cast<std::int16_t>(detail::get_u16(data, p));
        out[c].samples[n] = static_cast<double>(raw) / 32767.0;
      } else {
        out[c].samples[n] = static_cast<double>(detail::get_f32(data, p));
      }
    }
  }
  return out;
}

}  // namespace sf3d

#endif  // SF3D_WAV_HPP_
