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

#include "pathlabel/label_composer.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pathlabel/error.h"

namespace pathlabel {
namespace {

LabelClass ExpectedClass(bool path, bool obstacle, bool cropped) {
  if (cropped) return LabelClass::kUnknown;
  if (obstacle) return LabelClass::kObstacle;
  if (path) return LabelClass::kProposedPath;
  return LabelClass::kUnknown;
}

BinaryMask RandomMask(std::mt19937_64& rng, int width, int height) {
  std::bernoulli_distribution bit(0.4);
  BinaryMask mask(width, height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) mask.set(c, r, bit(rng));
  }
  return mask;
}

SensorRig TestRig() {
  return SensorRig{CameraModel::FromIntrinsics(320., 320., 320., 128., 640, 256),
                   RigidTransform::Identity(),
                   ContactCalibration::FromVehicle(2.2, 1.65, 2.)};
}

TEST(ComposeTest, TruthTable) {
  for (int bits = 0; bits < 4; ++bits) {
    const bool path = bits & 1;
    const bool obstacle = bits & 2;
    BinaryMask p(2, 1), o(2, 1);
    p.set(0, 0, path);
    o.set(0, 0, obstacle);
    p.set(1, 0, !path);
    o.set(1, 0, !obstacle);
    const LabelMask labels = Compose(p, o, CropSpec{});
    EXPECT_EQ(labels.at(0, 0), ExpectedClass(path, obstacle, false));
    EXPECT_EQ(labels.at(1, 0), ExpectedClass(!path, !obstacle, false));
  }
}

TEST(ComposeTest, ObstacleWinsOverPath) {
  BinaryMask p(3, 3), o(3, 3);
  p.set(1, 1);
  o.set(1, 1);
  EXPECT_EQ(Compose(p, o, CropSpec{}).at(1, 1), LabelClass::kObstacle);
}

TEST(ComposeTest, EmptyMasksAreUnknown) {
  const LabelMask labels = Compose(BinaryMask(8, 6), BinaryMask(8, 6), CropSpec{});
  EXPECT_EQ(labels.ClassCounts()[0], 48u);
}

TEST(ComposeTest, MatchesConditionalOnRandomMasks) {
  std::mt19937_64 rng(8);
  const CropSpec crop{3, 2};
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask p = RandomMask(rng, 17, 13);
    const BinaryMask o = RandomMask(rng, 17, 13);
    const LabelMask labels = Compose(p, o, crop);
    for (int r = 0; r < 13; ++r) {
      for (int c = 0; c < 17; ++c) {
        ASSERT_EQ(labels.at(c, r),
                  ExpectedClass(p.at(c, r), o.at(c, r), r < 3 || r >= 11));
      }
    }
    const auto counts = labels.ClassCounts();
    EXPECT_EQ(counts[0] + counts[1] + counts[2], 17u * 13u);
  }
}

TEST(ComposeTest, SizeMismatchThrows) {
  EXPECT_THROW(Compose(BinaryMask(4, 4), BinaryMask(4, 5), CropSpec{}), ShapeError);
}

TEST(CropSpecTest, FromFractionsRounds) {
  const CropSpec crop = CropSpec::FromFractions(256);
  EXPECT_EQ(crop.top_rows, 38);
  EXPECT_EQ(crop.bottom_rows, 26);
  const CropSpec kitti = CropSpec::FromFractions(187);
  EXPECT_EQ(kitti.top_rows, 28);
  EXPECT_EQ(kitti.bottom_rows, 19);
}

TEST(CropSpecTest, RejectsCropCoveringImage) {
  EXPECT_THROW(CropSpec({5, 5}).Validate(10), ValidationError);
  EXPECT_THROW(CropSpec::FromFractions(10, 0.6, 0.4), ValidationError);
  EXPECT_THROW(LabelMask(4, 4, CropSpec{-1, 0}), ValidationError);
}

TEST(LabelMaskTest, CroppedWritesIgnored) {
  LabelMask mask(4, 10, CropSpec{2, 3});
  mask.set(0, 1, LabelClass::kObstacle);
  mask.set(0, 7, LabelClass::kObstacle);
  mask.set(0, 6, LabelClass::kObstacle);
  EXPECT_EQ(mask.at(0, 1), LabelClass::kUnknown);
  EXPECT_EQ(mask.at(0, 7), LabelClass::kUnknown);
  EXPECT_EQ(mask.at(0, 6), LabelClass::kObstacle);
}

TEST(LabelMaskTest, FromRawValidates) {
  const std::vector<std::uint8_t> ok = {0, 1, 2, 0};
  EXPECT_EQ(LabelMask::FromRaw(2, 2, {}, ok).at(0, 1), LabelClass::kObstacle);
  const std::vector<std::uint8_t> bad = {0, 3, 0, 0};
  EXPECT_THROW(LabelMask::FromRaw(2, 2, {}, bad), FormatError);
  EXPECT_THROW(LabelMask::FromRaw(2, 2, {1, 0}, ok), ValidationError);
  EXPECT_THROW(LabelMask::FromRaw(2, 3, {}, ok), ShapeError);
}

TEST(SensorModeTest, ParsesNames) {
  EXPECT_EQ(ParseSensorMode("raw_cloud"), SensorMode::kRawCloud);
  EXPECT_EQ(ParseSensorMode("prefiltered_contours"),
            SensorMode::kPrefilteredContours);
  EXPECT_THROW(ParseSensorMode("lidar"), ParseError);
}

TEST(FrameSeedTest, DependsOnSeedAndFrame) {
  EXPECT_EQ(FrameSeed(1, 5), FrameSeed(1, 5));
  EXPECT_NE(FrameSeed(1, 5), FrameSeed(1, 6));
  EXPECT_NE(FrameSeed(1, 5), FrameSeed(2, 5));
}

TEST(LabelFrameTest, PrefilteredEmptyCloudHasNoObstacles) {
  const std::vector<RigidTransform> relatives(
      80, RigidTransform::Translation({0., 0., 1.}));
  LabelingParams params;
  params.sensor_mode = SensorMode::kPrefilteredContours;
  const LabelResult result = LabelFrame(relatives, 0, PointCloud{}, TestRig(),
                                        CropSpec::FromFractions(256), params);
  const auto counts = result.mask.ClassCounts();
  EXPECT_EQ(counts[2], 0u);
  EXPECT_GT(counts[1], 0u);
  EXPECT_FALSE(result.ground_plane.has_value());
  EXPECT_EQ(result.lookahead.frames, 61u);
}

TEST(LabelFrameTest, PrefilteredPointsBecomeObstacles) {
  const std::vector<RigidTransform> relatives(
      80, RigidTransform::Translation({0., 0., 1.}));
  LabelingParams params;
  params.sensor_mode = SensorMode::kPrefilteredContours;
  PointCloud cloud;
  cloud.points = {{0., 0., 20.}};
  const LabelResult result = LabelFrame(relatives, 0, cloud, TestRig(),
                                        CropSpec{}, params);
  EXPECT_EQ(result.mask.at(320, 128), LabelClass::kObstacle);
  EXPECT_EQ(result.mask.at(320, 0), LabelClass::kObstacle);
  EXPECT_EQ(result.obstacle_pixels, 129u);
}

TEST(LabelFrameTest, TruncatedRecordingStillLabelled) {
  const std::vector<RigidTransform> relatives(
      5, RigidTransform::Translation({0., 0., 1.}));
  LabelingParams params;
  params.sensor_mode = SensorMode::kPrefilteredContours;
  const LabelResult result = LabelFrame(relatives, 0, PointCloud{}, TestRig(),
                                        CropSpec{}, params);
  EXPECT_TRUE(result.lookahead.truncated);
  EXPECT_EQ(result.lookahead.frames, 5u);
  EXPECT_EQ(result.quads, 5u);
  EXPECT_GT(result.mask.ClassCounts()[1], 0u);
}

TEST(LabelFrameTest, RawCloudDeterministicAndSkipsOnFailure) {
  const std::vector<RigidTransform> relatives(
      80, RigidTransform::Translation({0., 0., 1.}));
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> x(1., 30.);
  std::uniform_real_distribution<double> y(-8., 8.);
  PointCloud cloud;
  // Identity extrinsic: camera axes, ground at y = 1.65.
  for (int i = 0; i < 2000; ++i) cloud.points.emplace_back(y(rng), 1.65, x(rng));
  for (int i = 0; i < 200; ++i) {
    cloud.points.emplace_back(0.5, 1.65 - 0.01 * i, 15.);
  }
  LabelingParams params;
  params.ground_region = GroundRegion{1e9, 1e9};
  const SensorRig rig = TestRig();
  const LabelResult a = LabelFrame(relatives, 7, cloud, rig, CropSpec{}, params);
  const LabelResult b = LabelFrame(relatives, 7, cloud, rig, CropSpec{}, params);
  EXPECT_EQ(a.mask, b.mask);
  ASSERT_TRUE(a.ground_plane.has_value());
  EXPECT_GT(a.obstacle_pixels, 0u);

  PointCloud tiny;
  tiny.points = {{0., 1., 1.}, {1., 1., 1.}};
  EXPECT_THROW(LabelFrame(relatives, 0, tiny, rig, CropSpec{}, params),
               EstimationFailedError);
}

}  // namespace
}  // namespace pathlabel
