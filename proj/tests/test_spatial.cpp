// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "sf3d/spatial.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include <gtest/gtest.h>

#include "sf3d/common.hpp"
#include "sf3d/geometry.hpp"
#include "sf3d/mel.hpp"
#include "sf3d/stft.hpp"

namespace {

using sf3d::ComplexSpectrogram;
using sf3d::FeatureLayout;
using sf3d::IpdMatrix;
using sf3d::MatD;
using sf3d::MicPair;
using sf3d::SfMatrix;
using sf3d::StftConfig;
using sf3d::TpdMatrix;
using sf3d::Waveform;

Waveform noise_wave(std::uint64_t seed, std::size_t n) {
  sf3d::Rng rng(seed);
  Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(n);
  for (auto& s : w.samples) s = rng.normal() * 0.1;
  return w;
}

TEST(Ipd, IdenticalChannelsGiveZeroPhase) {
  const auto cfg = StftConfig::pipelined();
  const auto x = noise_wave(3, 8000);
  std::vector<ComplexSpectrogram> specs = {sf3d::stft(x, cfg),
                                           sf3d::stft(x, cfg)};
  const auto out = sf3d::ipd(specs, {{0, 1}});
  ASSERT_EQ(out.per_pair.size(), 1u);
  for (std::size_t i = 0; i < out.per_pair[0].size(); ++i)
    EXPECT_NEAR(out.per_pair[0].data()[i], 0.0, 1e-12);
}

TEST(Ipd, IntegerDelayMatchesShiftTheorem) {
  // Channel 2 lags channel 1 by D samples; at a bin-center frequency the
  // measured phase difference angle(Y1) - angle(Y2) equals +2*pi*k0*D/N.
  const auto cfg = StftConfig::pipelined();
  const int kDelay = 2;
  const std::size_t n = 16000;
  for (const int k0 : {20, 64, 100}) {
    const double w0 = sf3d::kTwoPi * k0 / cfg.fft_size;
    Waveform a, b;
    a.sample_rate = b.sample_rate = 16000;
    a.samples.resize(n);
    b.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      a.samples[i] = std::cos(w0 * static_cast<double>(i) + 0.37);
      b.samples[i] =
          std::cos(w0 * (static_cast<double>(i) - kDelay) + 0.37);
    }
    std::vector<ComplexSpectrogram> specs = {sf3d::stft(a, cfg),
                                             sf3d::stft(b, cfg)};
    const auto out = sf3d::ipd(specs, {{0, 1}});
    const double expect = w0 * kDelay;
    const std::size_t frames = out.per_pair[0].rows();
    for (std::size_t t = 2; t + 2 < frames; ++t) {
      EXPECT_NEAR(out.per_pair[0](t, static_cast<std::size_t>(k0)), expect,
                  1e-3)
          << "k0 " << k0 << " frame " << t;
    }
  }
}

TEST(Ipd, RejectsMismatchedInputs) {
  const auto cfg = StftConfig::pipelined();
  const auto x = noise_wave(1, 4000);
  auto s1 = sf3d::stft(x, cfg);
  auto s2 = sf3d::stft(x, cfg);
  EXPECT_THROW(sf3d::ipd({s1}, {{0, 1}}), sf3d::Error);        // pair range
  EXPECT_THROW(sf3d::ipd({s1, s2}, {{0, 2}}), sf3d::Error);    // pair range
  EXPECT_THROW(sf3d::ipd({s1, s2}, {}), sf3d::Error);          // no pairs
  auto short_wave = noise_wave(1, 2000);
  auto s3 = sf3d::stft(short_wave, cfg);
  EXPECT_THROW(sf3d::ipd({s1, s3}, {{0, 1}}), sf3d::Error);    // shape
}

IpdMatrix constant_ipd(const std::vector<MicPair>& pairs, std::size_t frames,
                       const TpdMatrix& tpd, double offset) {
  IpdMatrix out;
  out.pairs = pairs;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    MatD m(frames, tpd.data.cols());
    for (std::size_t t = 0; t < frames; ++t)
      for (std::size_t k = 0; k < tpd.data.cols(); ++k)
        m(t, k) = sf3d::wrap_angle(tpd.data(p, k) + offset);
    out.per_pair.push_back(std::move(m));
  }
  return out;
}

TEST(SpatialFeature, PerfectAgreementSaturatesAtPairCount) {
  const auto arr = sf3d::default_array();
  const auto pairs = sf3d::default_pairs();
  const auto tpd = sf3d::tpd_3d({0.9, 0.1, 1.5}, pairs, arr, 257, 16000);
  const auto agree = constant_ipd(pairs, 12, tpd, 0.0);
  const auto sf = sf3d::spatial_feature(agree, tpd);
  EXPECT_EQ(sf.pair_count, 6);
  for (std::size_t i = 0; i < sf.data.size(); ++i)
    EXPECT_NEAR(sf.data.data()[i], 6.0, 1e-9);

  const auto oppose = constant_ipd(pairs, 12, tpd, sf3d::kPi);
  const auto sf_neg = sf3d::spatial_feature(oppose, tpd);
  for (std::size_t i = 0; i < sf_neg.data.size(); ++i)
    EXPECT_NEAR(sf_neg.data.data()[i], -6.0, 1e-9);

  const auto sf_norm = sf3d::spatial_feature(agree, tpd, /*normalize=*/true);
  for (std::size_t i = 0; i < sf_norm.data.size(); ++i)
    EXPECT_NEAR(sf_norm.data.data()[i], 1.0, 1e-9);
}

TEST(SpatialFeature, ShapeAndRangeOnNoise) {
  const auto cfg = StftConfig::pipelined();
  const auto arr = sf3d::default_array();
  const auto pairs = sf3d::default_pairs();
  std::vector<ComplexSpectrogram> specs;
  for (std::uint64_t ch = 0; ch < 8; ++ch)
    specs.push_back(sf3d::stft(noise_wave(100 + ch, 8000), cfg));
  const auto phases = sf3d::ipd(specs, pairs);
  const auto tpd = sf3d::tpd_3d({1.2, 0.0, 2.0}, pairs, arr, 257, 16000);
  const auto sf = sf3d::spatial_feature(phases, tpd);
  EXPECT_EQ(sf.data.rows(), specs[0].frames());
  EXPECT_EQ(sf.data.cols(), 257u);
  double mean = 0.0;
  for (std::size_t i = 0; i < sf.data.size(); ++i) {
    EXPECT_LE(sf.data.data()[i], 6.0 + 1e-12);
    EXPECT_GE(sf.data.data()[i], -6.0 - 1e-12);
    mean += sf.data.data()[i];
  }
  mean /= static_cast<double>(sf.data.size());
  // Independent noise carries no coherent phase; the score hovers near zero.
  EXPECT_LT(std::abs(mean), 0.05);
}

TEST(SpatialFeature, RejectsPairListMismatch) {
  const auto arr = sf3d::default_array();
  const auto pairs = sf3d::default_pairs();
  const auto tpd = sf3d::tpd_3d({0.9, 0.0, 1.5}, pairs, arr, 257, 16000);
  auto phases = constant_ipd(pairs, 4, tpd, 0.0);
  phases.pairs[0] = {0, 5};
  EXPECT_THROW(sf3d::spatial_feature(phases, tpd), sf3d::Error);
}

TEST(Features, PipelinedAssemblyIs2056Wide) {
  const auto cfg = StftConfig::pipelined();
  const auto arr = sf3d::default_array();
  const auto pairs = sf3d::default_pairs();
  std::vector<ComplexSpectrogram> specs;
  for (std::uint64_t ch = 0; ch < 8; ++ch)
    specs.push_back(sf3d::stft(noise_wave(7 + ch, 8000), cfg));
  const auto lps = sf3d::lps(specs[0]);
  const auto phases = sf3d::ipd(specs, pairs);
  const auto tpd = sf3d::tpd_3d({0.8, 0.05, 1.2}, pairs, arr, 257, 16000);
  const auto sf = sf3d::spatial_feature(phases, tpd);

  const auto fm = sf3d::assemble_pipelined(lps, phases, sf);
  EXPECT_EQ(fm.layout, FeatureLayout::kPipelined2056);
  EXPECT_EQ(fm.data.cols(), 2056u);
  EXPECT_EQ(fm.data.rows(), specs[0].frames());
  ASSERT_EQ(fm.manifest.size(), 8u);
  EXPECT_EQ(fm.manifest[0].first, "LPS");
  EXPECT_EQ(fm.manifest[1].first, "IPD_0_7");
  EXPECT_EQ(fm.manifest[4].first, "IPD_3_4");
  EXPECT_EQ(fm.manifest[6].first, "IPD_0_3");
  EXPECT_EQ(fm.manifest[7].first, "SF");
  for (const auto& blk : fm.manifest) EXPECT_EQ(blk.second, 257u);

  // Slices reproduce their sources bit-exactly (after float32 storage).
  const auto sf_block = fm.slice_block("SF");
  ASSERT_EQ(sf_block.rows(), sf.data.rows());
  for (std::size_t i = 0; i < sf_block.size(); ++i)
    EXPECT_EQ(sf_block.data()[i], static_cast<float>(sf.data.data()[i]));
  const auto ipd_block = fm.slice_block("IPD_1_6");
  for (std::size_t i = 0; i < ipd_block.size(); ++i)
    EXPECT_EQ(ipd_block.data()[i],
              static_cast<float>(phases.per_pair[1].data()[i]));
  EXPECT_THROW(fm.slice_block("NOPE"), sf3d::Error);
}

TEST(Features, AllInOneAssemblyIs241Wide) {
  const auto cfg = StftConfig::all_in_one();
  const auto arr = sf3d::default_array();
  const auto pairs = sf3d::default_pairs();
  std::vector<ComplexSpectrogram> specs;
  for (std::uint64_t ch = 0; ch < 8; ++ch)
    specs.push_back(sf3d::stft(noise_wave(50 + ch, 8000), cfg));
  const auto fb = sf3d::make_mel_filterbank(40, 201, 16000);
  const auto lfb = sf3d::lfb(specs[0], fb);
  const auto phases = sf3d::ipd(specs, pairs);
  const auto tpd = sf3d::tpd_3d({1.4, -0.1, 2.0}, pairs, arr, 201, 16000);
  const auto sf = sf3d::spatial_feature(phases, tpd);

  const auto fm = sf3d::assemble_all_in_one(lfb, sf);
  EXPECT_EQ(fm.layout, FeatureLayout::kAllInOne241);
  EXPECT_EQ(fm.data.cols(), 241u);
  ASSERT_EQ(fm.manifest.size(), 2u);
  EXPECT_EQ(fm.manifest[0].first, "LFB");
  EXPECT_EQ(fm.manifest[0].second, 40u);
  EXPECT_EQ(fm.manifest[1].first, "SF");
  EXPECT_EQ(fm.manifest[1].second, 201u);

  // Frame mismatch and wrong-resolution SF are rejected.
  sf3d::MatD bad_lfb(lfb.rows() + 1, lfb.cols());
  EXPECT_THROW(sf3d::assemble_all_in_one(bad_lfb, sf), sf3d::Error);
  SfMatrix sf257;
  sf257.pair_count = 6;
  sf257.data = MatD(sf.data.rows(), 257);
  EXPECT_THROW(sf3d::assemble_all_in_one(lfb, sf257), sf3d::Error);
}

TEST(Features, LayoutNamesRoundTrip) {
  EXPECT_EQ(sf3d::layout_name(FeatureLayout::kPipelined2056),
            "pipelined_2056");
  EXPECT_EQ(sf3d::layout_name(FeatureLayout::kAllInOne241), "all_in_one_241");
  EXPECT_EQ(sf3d::layout_from_name("pipelined_2056"),
            FeatureLayout::kPipelined2056);
  EXPECT_EQ(sf3d::layout_from_name("custom"), FeatureLayout::kCustom);
  EXPECT_THROW(sf3d::layout_from_name("bogus"), sf3d::Error);
}

}  // namespace
