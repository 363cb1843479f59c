/*
 * Copyright 2026 The Pathlabel Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pathlabel/sampler.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "pathlabel/error.h"

namespace pathlabel {
namespace {

std::vector<std::size_t> PerBinCounts(std::span<const double> rates,
                                      std::span<const std::size_t> picked,
                                      int bins) {
  const YawHistogram histogram = YawHistogram::Build(rates, bins);
  std::vector<std::size_t> counts(bins, 0);
  for (int b = 0; b < bins; ++b) {
    for (const std::size_t i : histogram.members[b]) {
      counts[b] += std::count(picked.begin(), picked.end(), i);
    }
  }
  return counts;
}

TEST(MeanYawRateTest, StraightIsZero) {
  const std::vector<RigidTransform> relatives(
      10, RigidTransform::Translation({0., 0., 1.}));
  EXPECT_EQ(MeanYawRate(relatives, 0, 10), 0.);
}

TEST(MeanYawRateTest, ConstantYaw) {
  const std::vector<RigidTransform> relatives(
      30, RigidTransform::FromEuler(0.02, 0., 0., {0., 0., 1.}));
  for (std::size_t k = 1; k <= 30; k += 7) {
    EXPECT_NEAR(MeanYawRate(relatives, 0, k), 0.02, 1e-12);
  }
}

TEST(MeanYawRateTest, MatchesDirectSum) {
  std::mt19937_64 rng(31);
  std::vector<RigidTransform> relatives;
  for (int i = 0; i < 40; ++i) relatives.push_back(testing::RandomTransform(rng));
  for (std::size_t start = 0; start < 10; ++start) {
    const std::size_t k = 30;
    double sum = 0.;
    for (std::size_t i = start; i < start + k; ++i) {
      const Eigen::Matrix3d& r = relatives[i].rotation();
      sum += std::atan2(r(0, 2), r(2, 2));
    }
    EXPECT_NEAR(MeanYawRate(relatives, start, k), sum / k, 1e-12);
  }
}

TEST(MeanYawRateTest, IgnoresTranslation) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> yaw(-0.1, 0.1);
  std::uniform_real_distribution<double> offset(-5., 5.);
  std::vector<RigidTransform> a, b;
  for (int i = 0; i < 20; ++i) {
    const double y = yaw(rng);
    a.push_back(RigidTransform::PureYaw(y));
    b.push_back(RigidTransform::FromEuler(y, 0., 0.,
                                          {offset(rng), offset(rng), offset(rng)}));
  }
  EXPECT_EQ(MeanYawRate(a, 2, 15), MeanYawRate(b, 2, 15));
}

TEST(MeanYawRateTest, Errors) {
  const std::vector<RigidTransform> relatives(5);
  EXPECT_THROW(MeanYawRate(relatives, 0, 0), ValidationError);
  EXPECT_THROW(MeanYawRate(relatives, 3, 3), IndexError);
}

TEST(TemporalSubsampleTest, SixteenToFour) {
  std::vector<double> t;
  for (int i = 0; i < 64; ++i) t.push_back(i / 16.);
  const std::vector<std::size_t> kept = TemporalSubsample(t, 4.);
  ASSERT_EQ(kept.size(), 16u);
  for (std::size_t i = 0; i < kept.size(); ++i) EXPECT_EQ(kept[i], 4 * i);
}

TEST(TemporalSubsampleTest, DefaultRateIsFourHertz) {
  std::vector<double> t;
  for (int i = 0; i < 40; ++i) t.push_back(100. + i * 0.1);
  const std::vector<std::size_t> kept = TemporalSubsample(t);
  // 10 Hz input: the first frame at least 0.25 s later is every third.
  ASSERT_GE(kept.size(), 2u);
  EXPECT_EQ(kept[1], 3u);
}

TEST(TemporalSubsampleTest, HighTargetKeepsAll) {
  std::vector<double> t;
  for (int i = 0; i < 20; ++i) t.push_back(i * 0.1);
  EXPECT_EQ(TemporalSubsample(t, 10.).size(), 20u);
  EXPECT_EQ(TemporalSubsample(t, 50.).size(), 20u);
}

TEST(TemporalSubsampleTest, FrameRecordsKeepOrder) {
  std::vector<FrameRecord> frames;
  for (std::size_t i = 0; i < 12; ++i) {
    frames.push_back(FrameRecord{i, i / 8., RigidTransform{}, "", ""});
  }
  const std::vector<FrameRecord> kept = TemporalSubsample(frames, 4.);
  ASSERT_EQ(kept.size(), 6u);
  EXPECT_EQ(kept[3].index, 6u);
}

TEST(TemporalSubsampleTest, RejectsNonPositiveRate) {
  const std::vector<double> t = {0., 1.};
  EXPECT_THROW(TemporalSubsample(t, 0.), ValidationError);
}

TEST(BalancedSampleTest, EqualSplit) {
  std::vector<double> rates(10, -0.1);
  rates.insert(rates.end(), 10, 0.1);
  const std::vector<std::size_t> picked = BalancedSample(rates, 2, 10, 1);
  ASSERT_EQ(picked.size(), 10u);
  EXPECT_EQ(PerBinCounts(rates, picked, 2), (std::vector<std::size_t>{5, 5}));
}

TEST(BalancedSampleTest, SmallBinRedistributed) {
  std::vector<double> rates(2, -0.1);
  rates.insert(rates.end(), 100, 0.1);
  const std::vector<std::size_t> picked = BalancedSample(rates, 2, 20, 1);
  ASSERT_EQ(picked.size(), 20u);
  EXPECT_EQ(PerBinCounts(rates, picked, 2), (std::vector<std::size_t>{2, 18}));
}

TEST(BalancedSampleTest, SingleBin) {
  const std::vector<double> rates(50, 0.03);
  const std::vector<std::size_t> picked = BalancedSample(rates, 20, 10, 4);
  EXPECT_EQ(picked.size(), 10u);
  EXPECT_EQ(std::set<std::size_t>(picked.begin(), picked.end()).size(), 10u);
}

TEST(BalancedSampleTest, TotalAboveSupplyReturnsAll) {
  const std::vector<double> rates = {0.1, -0.2, 0.};
  EXPECT_EQ(BalancedSample(rates, 20, 10, 0),
            (std::vector<std::size_t>{0, 1, 2}));
}

TEST(BalancedSampleTest, PropertiesOnRandomSupply) {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> straight(0., 0.002);
  std::uniform_real_distribution<double> turning(-0.1, 0.1);
  std::bernoulli_distribution turn(0.1);
  std::vector<double> rates;
  for (int i = 0; i < 3000; ++i) {
    rates.push_back(turn(rng) ? turning(rng) : straight(rng));
  }
  for (const std::size_t total : {1u, 37u, 300u, 2999u, 3000u}) {
    const std::vector<std::size_t> a = BalancedSample(rates, 20, total, 5);
    const std::vector<std::size_t> b = BalancedSample(rates, 20, total, 5);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.size(), std::min<std::size_t>(total, rates.size()));
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), a.size());
  }
  EXPECT_NE(BalancedSample(rates, 20, 300, 5), BalancedSample(rates, 20, 300, 6));
}

TEST(BalancedSampleTest, AmpleSupplyIsBalanced) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> rate(-0.1, 0.1);
  std::vector<double> rates;
  for (int i = 0; i < 4000; ++i) rates.push_back(rate(rng));
  const YawHistogram histogram = YawHistogram::Build(rates, 20);
  const std::size_t total = 503;
  const std::size_t need = (total + histogram.NonEmptyBins() - 1) /
                           histogram.NonEmptyBins();
  for (const std::size_t c : histogram.counts) ASSERT_GE(c, need);
  const std::vector<std::size_t> counts =
      PerBinCounts(rates, BalancedSample(rates, 20, total, 9), 20);
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  EXPECT_LE(*hi - *lo, 1u);
}

TEST(YawHistogramTest, SignedSymmetricEdges) {
  const std::vector<double> rates = {-0.2, 0.05, 0.2};
  const YawHistogram histogram = YawHistogram::Build(rates, 4);
  ASSERT_EQ(histogram.bin_edges.size(), 5u);
  EXPECT_DOUBLE_EQ(histogram.bin_edges.front(), -0.2);
  EXPECT_DOUBLE_EQ(histogram.bin_edges.back(), 0.2);
  EXPECT_EQ(histogram.counts, (std::vector<std::size_t>{1, 0, 1, 1}));
}

}  // namespace
}  // namespace pathlabel
