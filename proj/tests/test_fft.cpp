// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "sf3d/fft.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "sf3d/common.hpp"
#include "support/oracles.hpp"

namespace {

using sf3d::Cplx;

std::vector<double> random_signal(std::uint64_t seed, std::size_t n) {
  sf3d::Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform(-1.0, 1.0);
  return x;
}

TEST(Fft, MatchesDirectDftPow2) {
  const auto x = random_signal(1, 512);
  const auto got = sf3d::rfft(x, 512);
  const auto want = sf3d_test::naive_dft(x, 512);
  ASSERT_EQ(got.size(), 257u);
  for (std::size_t k = 0; k < got.size(); ++k)
    EXPECT_LT(std::abs(got[k] - want[k]), 1e-9) << "bin " << k;
}

TEST(Fft, MatchesDirectDftNonPow2) {
  const auto x = random_signal(2, 400);
  const auto got = sf3d::rfft(x, 400);
  const auto want = sf3d_test::naive_dft(x, 400);
  ASSERT_EQ(got.size(), 201u);
  for (std::size_t k = 0; k < got.size(); ++k)
    EXPECT_LT(std::abs(got[k] - want[k]), 1e-9) << "bin " << k;
}

TEST(Fft, MatchesDirectDftPrimeSize) {
  const auto x = random_signal(3, 401);
  const auto got = sf3d::rfft(x, 401);
  const auto want = sf3d_test::naive_dft(x, 401);
  ASSERT_EQ(got.size(), 201u);
  for (std::size_t k = 0; k < got.size(); ++k)
    EXPECT_LT(std::abs(got[k] - want[k]), 1e-8) << "bin " << k;
}

TEST(Fft, IrfftInvertsRfft) {
  for (const std::size_t n : {512u, 400u, 256u}) {
    const auto x = random_signal(4 + n, n);
    const auto back = sf3d::irfft(sf3d::rfft(x, n), n);
    ASSERT_EQ(back.size(), n);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(back[i], x[i], 1e-10) << "n=" << n << " i=" << i;
  }
}

TEST(Fft, ParsevalHolds) {
  for (const std::size_t n : {512u, 400u}) {
    const auto x = random_signal(7 + n, n);
    double time_e = 0.0;
    for (double v : x) time_e += v * v;
    const auto spec = sf3d::rfft(x, n);
    double freq_e = std::norm(spec[0]) + std::norm(spec[n / 2]);
    for (std::size_t k = 1; k < n / 2; ++k) freq_e += 2.0 * std::norm(spec[k]);
    freq_e /= static_cast<double>(n);
    EXPECT_NEAR(freq_e / time_e, 1.0, 1e-9) << "n=" << n;
  }
}

TEST(Fft, DeltaTransformsToAllOnes) {
  std::vector<double> delta(512, 0.0);
  delta[0] = 1.0;
  const auto spec = sf3d::rfft(delta, 512);
  for (const Cplx& v : spec) {
    EXPECT_NEAR(v.real(), 1.0, 1e-12);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
  }
}

TEST(Fft, InverseRoundTripComplex) {
  sf3d::Rng rng(9);
  std::vector<Cplx> a(400);
  for (auto& v : a) v = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  std::vector<Cplx> b = a;
  sf3d::fft(b, false);
  sf3d::fft(b, true);
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_LT(std::abs(a[i] - b[i]), 1e-10);
}

TEST(Fft, ConvolveMatchesDirect) {
  const auto a = random_signal(11, 50);
  const auto b = random_signal(12, 37);
  const auto got = sf3d::fft_convolve(a, b);
  const auto want = sf3d_test::naive_convolve(a, b);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    EXPECT_NEAR(got[i], want[i], 1e-10);
}

TEST(Fft, RejectsBadSizes) {
  EXPECT_THROW(sf3d::rfft({1.0, 2.0}, 1), sf3d::Error);
  EXPECT_THROW(sf3d::irfft({Cplx(1, 0)}, 512), sf3d::Error);
  EXPECT_THROW(sf3d::fft_convolve({}, {1.0}), sf3d::Error);
}

}  // namespace
