// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_SPATIAL_HPP_
#define SF3D_SPATIAL_HPP_

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sf3d/common.hpp"
#include "sf3d/geometry.hpp"
#include "sf3d/stft.hpp"

// Interchannel phase differences and the target-location spatial feature.

namespace sf3d {

// Raw angle differences in (-2*pi, 2*pi), one frames-x-bins plane per pair.
// No wrapping: the consumer is cos/sin, which does not care. wrap_angle()
// below is for display.
struct IpdMatrix {
  std::vector<MatD> per_pair;
  std::vector<MicPair> pairs;

  std::size_t num_pairs() const { return per_pair.size(); }
  std::size_t frames() const { return per_pair.empty() ? 0 : per_pair[0].rows(); }
  std::size_t bins() const { return per_pair.empty() ? 0 : per_pair[0].cols(); }
};

inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a - kPi;
}

inline IpdMatrix ipd(const std::vector<ComplexSpectrogram>& specs,
                     const std::vector<MicPair>& pairs) {
  check(!specs.empty(), "ipd: no spectrograms");
  check(!pairs.empty(), "ipd: no pairs");
  for (const auto& s : specs) {
    check(s.data.same_shape(specs[0].data), "ipd: spectrogram shape mismatch");
    check(s.config == specs[0].config, "ipd: spectrogram config mismatch");
  }
  for (const MicPair& p : pairs) {
    check(p.m1 != p.m2, "ipd: pair with identical channels");
    check(p.m1 >= 0 && p.m2 >= 0 && p.m1 < static_cast<int>(specs.size()) &&
              p.m2 < static_cast<int>(specs.size()),
          "ipd: pair index out of range");
  }

  IpdMatrix out;
  out.pairs = pairs;
  const std::size_t frames = specs[0].frames(), bins = specs[0].bins();
  for (const MicPair& p : pairs) {
    MatD plane(frames, bins);
    const MatC& a = specs[p.m1].data;
    const MatC& b = specs[p.m2].data;
    for (std::size_t t = 0; t < frames; ++t)
      for (std::size_t f = 0; f < bins; ++f)
        plane(t, f) = std::arg(a(t, f)) - std::arg(b(t, f));
    out.per_pair.push_back(std::move(plane));
  }
  return out;
}

// Sum over pairs of the cosine similarity between predicted and observed
// phase differences. Entries live in [-P, P]; near P where the queried
// location dominates the bin. Stored unnormalized; set normalize to divide
// by the pair count.
struct SfMatrix {
  MatD data;  // frames x bins
  int pair_count = 0;

  std::size_t frames() const { return data.rows(); }
  std::size_t bins() const { return data.cols(); }
};

inline SfMatrix spatial_feature(const IpdMatrix& ipd_mat, const TpdMatrix& tpd,
                                bool normalize = false) {
  check(ipd_mat.num_pairs() == tpd.num_pairs(),
        "spatial_feature: pair count mismatch");
  check(ipd_mat.pairs == tpd.pairs, "spatial_feature: pair list mismatch");
  check(ipd_mat.bins() == tpd.bins(), "spatial_feature: bin count mismatch");

  SfMatrix sf;
  sf.pair_count = static_cast<int>(tpd.num_pairs());
  sf.data = MatD(ipd_mat.frames(), ipd_mat.bins(), 0.0);
  for (std::size_t p = 0; p < tpd.num_pairs(); ++p) {
    const MatD& plane = ipd_mat.per_pair[p];
    for (std::size_t t = 0; t < sf.frames(); ++t)
      for (std::size_t f = 0; f < sf.bins(); ++f)
        sf.data(t, f) += std::cos(tpd.data(p, f) - plane(t, f));
  }
  if (normalize) {
    for (std::size_t t = 0; t < sf.frames(); ++t)
      for (std::size_t f = 0; f < sf.bins(); ++f)
        sf.data(t, f) /= sf.pair_count;
  }
  return sf;
}

enum class FeatureLayout { kPipelined2056, kAllInOne241, kCustom };

inline std::string layout_name(FeatureLayout l) {
  switch (l) {
    case FeatureLayout::kPipelined2056: return "pipelined_2056";
    case FeatureLayout::kAllInOne241: return "all_in_one_241";
    case FeatureLayout::kCustom: return "custom";
  }
  return "custom";
}

inline FeatureLayout layout_from_name(const std::string& s) {
  if (s == "pipelined_2056") return FeatureLayout::kPipelined2056;
  if (s == "all_in_one_241") return FeatureLayout::kAllInOne241;
  if (s == "custom") return FeatureLayout::kCustom;
  throw Error("unknown feature layout: " + s);
}

// Concatenated per-frame feature rows, float32 storage (matching the file
// payload). The manifest records block order and widths so slices are
// recoverable bit-exactly.
struct FeatureMatrix {
  MatF data;  // frames x total_dim
  FeatureLayout layout = FeatureLayout::kCustom;
  std::vector<std::pair<std::string, std::size_t>> manifest;

  std::size_t frames() const { return data.rows(); }
  std::size_t dim() const { return data.cols(); }

  void validate() const {
    std::size_t total = 0;
    for (const auto& [name, width] : manifest) total += width;
    check(total == data.cols(),
          "FeatureMatrix: manifest widths do not sum to the matrix width");
  }

  MatF slice_block(const std::string& name) const {
    std::size_t offset = 0;
    for (const auto& [block, width] : manifest) {
      if (block == name) {
        MatF out(data.rows(), width);
        for (std::size_t t = 0; t < data.rows(); ++t)
          for (std::size_t j = 0; j < width; ++j)
            out(t, j) = data(t, offset + j);
        return out;
      }
      offset += width;
    }
    throw Error("FeatureMatrix: no block named '" + name + "'");
  }
};

namespace detail {

inline std::string pair_block_name(const MicPair& p) {
  return "IPD_" + std::to_string(p.m1) + "_" + std::to_string(p.m2);
}

inline void append_block(FeatureMatrix* fm, const std::string& name,
                         const MatD& block, std::size_t col_offset) {
  for (std::size_t t = 0; t < block.rows(); ++t)
    for (std::size_t j = 0; j < block.cols(); ++j)
      fm->data(t, col_offset + j) = static_cast<float>(block(t, j));
  fm->manifest.emplace_back(name, block.cols());
}

}  // namespace detail

// [LPS | IPD per pair | SF], all at the same bin count. With 257 bins and
// 6 pairs the width is 257*(1+6+1) = 2056.
inline FeatureMatrix assemble_pipelined(const MatD& lps_mat,
                                        const IpdMatrix& ipd_mat,
                                        const SfMatrix& sf) {
  const std::size_t frames = lps_mat.rows(), bins = lps_mat.cols();
  check(ipd_mat.frames() == frames && sf.frames() == frames,
        "assemble_pipelined: frame count mismatch");
  check(ipd_mat.bins() == bins && sf.bins() == bins,
        "assemble_pipelined: bin count mismatch");

  FeatureMatrix fm;
  fm.layout = bins == 257 && ipd_mat.num_pairs() == 6
                  ? FeatureLayout::kPipelined2056
                  : FeatureLayout::kCustom;
  fm.data = MatF(frames, bins * (ipd_mat.num_pairs() + 2));
  std::size_t offset = 0;
  detail::append_block(&fm, "LPS", lps_mat, offset);
  offset += bins;
  for (std::size_t p = 0; p < ipd_mat.num_pairs(); ++p) {
    detail::append_block(&fm, detail::pair_block_name(ipd_mat.pairs[p]),
                         ipd_mat.per_pair[p], offset);
    offset += bins;
  }
  detail::append_block(&fm, "SF", sf.data, offset);
  fm.validate();
  return fm;
}

// [LFB | SF] with SF at the 201-bin analysis: 40 + 201 = 241.
inline FeatureMatrix assemble_all_in_one(const MatD& lfb_mat,
                                         const SfMatrix& sf) {
  check(lfb_mat.rows() == sf.frames(),
        "assemble_all_in_one: frame count mismatch");
  check(sf.bins() == 201,
        "assemble_all_in_one: SF must come from the 201-bin analysis");

  FeatureMatrix fm;
  fm.layout = lfb_mat.cols() == 40 ? FeatureLayout::kAllInOne241
                                   : FeatureLayout::kCustom;
  fm.data = MatF(lfb_mat.rows(), lfb_mat.cols() + sf.bins());
  detail::append_block(&fm, "LFB", lfb_mat, 0);
  detail::append_block(&fm, "SF", sf.data, lfb_mat.cols());
  fm.validate();
  return fm;
}

}  // namespace sf3d

#endif  // SF3D_SPATIAL_HPP_
