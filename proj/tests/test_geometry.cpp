// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "sf3d/geometry.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "sf3d/common.hpp"

namespace {

using sf3d::default_array;
using sf3d::default_pairs;
using sf3d::MicPair;
using sf3d::MicrophoneArray;
using sf3d::SourceLocation;
using sf3d::Vec3;

constexpr double kDegree = sf3d::kPi / 180.0;

TEST(Geometry, DefaultArrayOffsets) {
  const auto offsets = sf3d::mic_offsets(default_array());
  const double want[8] = {-0.40, -0.25, -0.15, -0.10,
                          0.10,  0.15,  0.25,  0.40};
  ASSERT_EQ(offsets.size(), 8u);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(offsets[i], want[i], 1e-12);
}

TEST(Geometry, LocateTrivialDirections) {
  const auto arr = default_array();
  const Vec3 ref = arr.reference_point;

  const Vec3 a = sf3d::locate({0.0, 0.0, 2.0}, arr);
  EXPECT_NEAR(a.x - ref.x, 2.0, 1e-12);
  EXPECT_NEAR(a.y - ref.y, 0.0, 1e-12);
  EXPECT_NEAR(a.z - ref.z, 0.0, 1e-12);

  const Vec3 b = sf3d::locate({sf3d::kPi / 2, 0.0, 3.0}, arr);
  EXPECT_NEAR(b.x - ref.x, 0.0, 1e-12);
  EXPECT_NEAR(b.y - ref.y, 3.0, 1e-12);

  const Vec3 c = sf3d::locate({0.3, sf3d::kPi / 2, 1.5}, arr);
  EXPECT_NEAR(c.z - ref.z, 1.5, 1e-12);
  EXPECT_NEAR(c.x - ref.x, 0.0, 1e-12);
}

TEST(Geometry, LocatePreservesDistance) {
  const auto arr = default_array();
  const SourceLocation loc{1.1, -0.2, 2.345};
  const Vec3 p = sf3d::locate(loc, arr);
  EXPECT_NEAR(sf3d::distance(p, arr.reference_point), 2.345, 1e-12);
}

TEST(Geometry, Tpd1dEndfire15cmPairAtNyquist) {
  // 15 cm spacing, endfire, 8 kHz: 2*pi*8000*0.15/343 = 21.98 rad.
  const auto tpd = sf3d::tpd_1d(0.0, {{0, 1}}, default_array(), 257, 16000);
  EXPECT_NEAR(std::abs(tpd.data(0, 256)), 2 * sf3d::kPi * 8000.0 * 0.15 / 343.0,
              1e-9);
  EXPECT_NEAR(std::abs(tpd.data(0, 256)), 21.98, 0.01);
}

TEST(Geometry, Tpd1dSignMatchesLeadingMicConvention) {
  // Endfire from +x: mic 7 (largest x) is closest, so for pair (0,7) the
  // path to m1=0 is longer and IPD = angle(Y0) - angle(Y7) is negative.
  const auto tpd = sf3d::tpd_1d(0.0, {{0, 7}}, default_array(), 257, 16000);
  EXPECT_LT(tpd.data(0, 100), 0.0);
  // tpd_3d agrees for a distant source.
  const auto tpd3 = sf3d::tpd_3d({0.0, 0.0, 50.0}, {{0, 7}}, default_array(),
                                 257, 16000);
  EXPECT_LT(tpd3.data(0, 100), 0.0);
}

TEST(Geometry, BroadsideAndDcAreZero) {
  const auto arr = default_array();
  const auto pairs = default_pairs();
  const auto t1 = sf3d::tpd_1d(sf3d::kPi / 2, pairs, arr, 257, 16000);
  for (std::size_t p = 0; p < t1.num_pairs(); ++p)
    for (std::size_t k = 0; k < t1.bins(); ++k)
      EXPECT_LT(std::abs(t1.data(p, k)), 1e-12);

  const auto t3 = sf3d::tpd_3d({0.7, 0.1, 1.5}, pairs, arr, 257, 16000);
  for (std::size_t p = 0; p < t3.num_pairs(); ++p)
    EXPECT_EQ(t3.data(p, 0), 0.0);  // f_0 = 0
}

TEST(Geometry, SymmetricPairsVanishAtBroadside3d) {
  // Pairs symmetric about the centroid see equal path lengths from any
  // broadside source, near or far.
  const auto arr = default_array();
  const std::vector<MicPair> sym = {{0, 7}, {1, 6}, {2, 5}, {3, 4}};
  for (double d : {0.6, 1.0, 2.5}) {
    const auto tpd = sf3d::tpd_3d({sf3d::kPi / 2, 0.0, d}, sym, arr, 257, 16000);
    for (std::size_t p = 0; p < tpd.num_pairs(); ++p)
      for (std::size_t k = 0; k < tpd.bins(); ++k)
        EXPECT_LT(std::abs(tpd.data(p, k)), 1e-9)
            << "pair " << p << " bin " << k << " d " << d;
  }
}

TEST(Geometry, AsymmetricPairsCarryDistanceCue) {
  // At matched azimuth, changing only range must move the off-center pairs'
  // phase prediction. This is the 3D feature's entire advantage.
  const auto arr = default_array();
  const std::vector<MicPair> off = {{4, 7}, {0, 3}};
  const auto near = sf3d::tpd_3d({75 * kDegree, 0.0, 1.0}, off, arr, 257, 16000);
  const auto far = sf3d::tpd_3d({75 * kDegree, 0.0, 2.5}, off, arr, 257, 16000);
  for (std::size_t p = 0; p < off.size(); ++p) {
    double max_gap = 0.0;
    for (std::size_t k = 0; k < 257; ++k)
      max_gap = std::max(max_gap, std::abs(near.data(p, k) - far.data(p, k)));
    EXPECT_GT(max_gap, 0.1) << "pair " << p;
  }
}

double max_tpd_gap(double az, double dist) {
  const auto arr = default_array();
  const auto pairs = default_pairs();
  const auto t1 = sf3d::tpd_1d(az, pairs, arr, 257, 16000);
  const auto t3 = sf3d::tpd_3d({az, 0.0, dist}, pairs, arr, 257, 16000);
  double err = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t k = 0; k < 257; ++k)
      err = std::max(err, std::abs(t3.data(p, k) - t1.data(p, k)));
  return err;
}

TEST(Geometry, FarFieldConvergesToPlaneWave) {
  // Residual wavefront curvature scales as sin^2(az)/d; at az = 0.2 rad it
  // sits well inside 1e-2 rad by 100 m.
  EXPECT_LT(max_tpd_gap(0.2, 100.0), 1e-2);
  // Monotone decay with range at any azimuth, including steep ones.
  for (const double az : {0.2, 1.0, sf3d::kPi / 2}) {
    const double e10 = max_tpd_gap(az, 10.0);
    const double e40 = max_tpd_gap(az, 40.0);
    const double e100 = max_tpd_gap(az, 100.0);
    EXPECT_LT(e40, e10) << "az " << az;
    EXPECT_LT(e100, e40) << "az " << az;
  }
}

TEST(Geometry, WidestPairSeparatesRangesAtMatchedAzimuth) {
  // Same bearing (0.2 rad), ranges 0.5 m vs 2.5 m: the 80 cm pair's phase
  // prediction at 4 kHz moves by more than 0.1 rad.
  const auto arr = default_array();
  const std::vector<MicPair> widest = {{0, 7}};
  const auto near = sf3d::tpd_3d({0.2, 0.0, 0.5}, widest, arr, 257, 16000);
  const auto far = sf3d::tpd_3d({0.2, 0.0, 2.5}, widest, arr, 257, 16000);
  EXPECT_GT(std::abs(near.data(0, 128) - far.data(0, 128)), 0.1);  // 4 kHz
}

TEST(Geometry, FrequencyLinearity) {
  const auto tpd = sf3d::tpd_3d({0.9, 0.05, 1.2}, default_pairs(),
                                default_array(), 257, 16000);
  for (std::size_t p = 0; p < tpd.num_pairs(); ++p)
    for (std::size_t k = 1; k <= 128; ++k)
      EXPECT_NEAR(tpd.data(p, 2 * k), 2.0 * tpd.data(p, k),
                  1e-12 * std::abs(tpd.data(p, 2 * k)) + 1e-12);
}

TEST(Geometry, PairOrderAntisymmetry) {
  const SourceLocation loc{0.8, -0.1, 1.7};
  const auto fwd = sf3d::tpd_3d(loc, {{0, 7}}, default_array(), 257, 16000);
  const auto rev = sf3d::tpd_3d(loc, {{7, 0}}, default_array(), 257, 16000);
  for (std::size_t k = 0; k < 257; ++k)
    EXPECT_NEAR(fwd.data(0, k), -rev.data(0, k), 1e-12);
}

TEST(Geometry, ElevationSignSymmetry) {
  // The array lies in the z = 0 plane, so +e and -e give equal distances.
  const auto pairs = default_pairs();
  const auto up = sf3d::tpd_3d({1.0, 0.3, 1.4}, pairs, default_array(), 257, 16000);
  const auto down =
      sf3d::tpd_3d({1.0, -0.3, 1.4}, pairs, default_array(), 257, 16000);
  for (std::size_t i = 0; i < up.data.size(); ++i)
    EXPECT_NEAR(up.data.data()[i], down.data.data()[i], 1e-12);
}

TEST(Geometry, SpatialAliasFrequencies) {
  const auto arr = default_array();
  EXPECT_NEAR(sf3d::spatial_alias_freq({0, 1}, arr), 343.0 / 0.30, 1e-9);
  EXPECT_NEAR(sf3d::spatial_alias_freq({3, 4}, arr), 343.0 / 0.40, 1e-9);
  EXPECT_NEAR(sf3d::spatial_alias_freq({0, 7}, arr), 343.0 / 1.60, 1e-9);
}

TEST(Geometry, RejectsBadInputs) {
  const auto arr = default_array();
  EXPECT_THROW(sf3d::tpd_1d(0.5, {{0, 8}}, arr, 257, 16000), sf3d::Error);
  EXPECT_THROW(sf3d::tpd_1d(0.5, {{3, 3}}, arr, 257, 16000), sf3d::Error);
  EXPECT_THROW(sf3d::tpd_1d(0.5, {}, arr, 257, 16000), sf3d::Error);
  EXPECT_THROW(sf3d::tpd_3d({0.5, 0.0, -1.0}, {{0, 1}}, arr, 257, 16000),
               sf3d::Error);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(sf3d::tpd_3d({0.5, nan, 1.0}, {{0, 1}}, arr, 257, 16000),
               sf3d::Error);

  // A bent array has no 1D axis to project onto.
  auto bent = MicrophoneArray::from_positions(
      {{0, 0, 0}, {0.1, 0, 0}, {0.2, 0.05, 0}, {0.3, 0, 0}});
  EXPECT_THROW(sf3d::tpd_1d(0.5, {{0, 1}}, bent, 257, 16000), sf3d::Error);

  // Source sitting on a microphone.
  auto arr2 = default_array();
  EXPECT_THROW(
      sf3d::tpd_3d({0.0, 0.0, 0.40}, {{0, 1}}, arr2, 257, 16000),
      sf3d::Error);
}

TEST(Geometry, ArrayConstructionInvariants) {
  EXPECT_THROW(MicrophoneArray::from_positions({{0, 0, 0}}), sf3d::Error);
  EXPECT_THROW(MicrophoneArray::from_positions({{0, 0, 0}, {0, 0, 0}}),
               sf3d::Error);
  const auto arr = default_array().placed_at({1.0, 2.0, 3.0});
  EXPECT_NEAR(arr.positions[0].x, 1.0, 1e-12);
  EXPECT_NEAR(arr.reference_point.x, 1.40, 1e-12);
  EXPECT_NEAR(arr.reference_point.y, 2.0, 1e-12);
  const auto offsets = sf3d::mic_offsets(arr);
  EXPECT_NEAR(offsets[0], -0.40, 1e-12);
}

}  // namespace
