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

#include "pathlabel/metrics.h"

#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "pathlabel/error.h"

namespace pathlabel {
namespace {

using testing::BruteForceSweep;

LabelMask MaskFrom(int width, int height, const std::vector<std::uint8_t>& v,
                   CropSpec crop = {}) {
  return LabelMask::FromRaw(width, height, crop, v);
}

LabelMask RandomLabels(std::mt19937_64& rng, int width, int height) {
  std::uniform_int_distribution<int> cls(0, 2);
  std::vector<std::uint8_t> v(static_cast<std::size_t>(width) * height);
  for (std::uint8_t& x : v) x = static_cast<std::uint8_t>(cls(rng));
  return MaskFrom(width, height, v);
}

TEST(ConfusionTest, HandTally) {
  const ConfusionMatrix cm =
      Confusion(MaskFrom(2, 2, {1, 1, 2, 0}), MaskFrom(2, 2, {1, 2, 2, 0}));
  EXPECT_EQ(cm.count(1, 1), 1u);
  EXPECT_EQ(cm.count(1, 2), 1u);
  EXPECT_EQ(cm.count(2, 2), 1u);
  EXPECT_EQ(cm.count(0, 0), 1u);
  EXPECT_EQ(cm.Total(), 4u);
}

TEST(ConfusionTest, IdenticalMasksAreDiagonal) {
  std::mt19937_64 rng(41);
  const LabelMask x = RandomLabels(rng, 13, 9);
  const ConfusionMatrix cm = Confusion(x, x);
  for (int p = 0; p < 3; ++p) {
    for (int a = 0; a < 3; ++a) {
      if (p != a) EXPECT_EQ(cm.count(p, a), 0u);
    }
  }
  EXPECT_EQ(cm.Total(), 13u * 9u);
  const SegReport report = MakeSegReport(cm);
  for (const ClassScores& s : report.per_class) {
    if (s.iou) EXPECT_EQ(*s.iou, 1.);
    if (s.precision) EXPECT_EQ(*s.precision, 1.);
    if (s.recall) EXPECT_EQ(*s.recall, 1.);
  }
}

TEST(ConfusionTest, CroppedRowsSkipped) {
  const LabelMask pred = MaskFrom(2, 3, {0, 0, 1, 1, 2, 2}, CropSpec{1, 0});
  const LabelMask truth = MaskFrom(2, 3, {0, 0, 1, 1, 0, 0}, CropSpec{0, 1});
  EXPECT_EQ(Confusion(pred, truth).Total(), 2u);
  EXPECT_EQ(Confusion(pred, truth, false).Total(), 6u);
}

TEST(ConfusionTest, SizeMismatchThrows) {
  EXPECT_THROW(Confusion(LabelMask(2, 2), LabelMask(2, 3)), ShapeError);
}

TEST(ConfusionTest, MergeIsOrderIndependent) {
  std::mt19937_64 rng(42);
  std::vector<ConfusionMatrix> parts;
  for (int i = 0; i < 5; ++i) {
    parts.push_back(Confusion(RandomLabels(rng, 6, 5), RandomLabels(rng, 6, 5)));
  }
  ConfusionMatrix forward, backward;
  for (int i = 0; i < 5; ++i) forward.Merge(parts[i]);
  for (int i = 4; i >= 0; --i) backward.Merge(parts[i]);
  EXPECT_EQ(forward, backward);
}

TEST(SegReportTest, HandBuiltCounts) {
  ConfusionMatrix cm;
  cm.Add(1, 1, 3);
  cm.Add(1, 0, 1);
  cm.Add(0, 1, 1);
  cm.Add(0, 0, 10);
  const SegReport report = MakeSegReport(cm);
  EXPECT_NEAR(*report.per_class[1].precision, 0.75, 1e-12);
  EXPECT_NEAR(*report.per_class[1].recall, 0.75, 1e-12);
  EXPECT_NEAR(*report.per_class[1].iou, 0.6, 1e-12);
}

TEST(SegReportTest, AbsentClassUndefined) {
  ConfusionMatrix cm;
  cm.Add(0, 0, 5);
  cm.Add(1, 1, 5);
  const SegReport report = MakeSegReport(cm);
  EXPECT_FALSE(report.per_class[2].precision.has_value());
  EXPECT_FALSE(report.per_class[2].recall.has_value());
  EXPECT_FALSE(report.per_class[2].iou.has_value());
  EXPECT_EQ(*report.mean.iou, 1.);
}

TEST(SegReportTest, IouBoundedByPrecisionAndRecall) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const SegReport report =
        MakeSegReport(Confusion(RandomLabels(rng, 8, 8), RandomLabels(rng, 8, 8)));
    for (const ClassScores& s : report.per_class) {
      if (s.iou) {
        EXPECT_LE(*s.iou, *s.precision + 1e-15);
        EXPECT_LE(*s.iou, *s.recall + 1e-15);
      }
    }
  }
}

TEST(SegReportTest, CsvWritesNull) {
  ConfusionMatrix cm;
  cm.Add(0, 0, 5);
  std::ostringstream out;
  WriteSegCsv(MakeSegReport(cm), "all", out);
  const std::string csv = out.str();
  EXPECT_NE(csv.find("all,unknown,iou,1\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("all,obstacle,precision,null\n"), std::string::npos) << csv;
}

TEST(MaxFApTest, PerfectScore) {
  BinaryMask truth(4, 4);
  std::vector<double> score(16, 0.);
  for (int i = 0; i < 16; i += 3) {
    truth.set(i % 4, i / 4);
    score[i] = 1.;
  }
  const EgoLaneReport report = MaxFAp(score, truth);
  EXPECT_EQ(report.max_f, 1.);
  EXPECT_EQ(*report.false_positive_rate, 0.);
  EXPECT_EQ(report.false_negative_rate, 0.);
}

TEST(MaxFApTest, FourPixelSweep) {
  const std::vector<double> score = {0.9, 0.6, 0.4, 0.1};
  const std::vector<std::uint8_t> positive = {1, 1, 0, 0};
  BinaryMask truth(4, 1);
  truth.set(0, 0);
  truth.set(1, 0);
  const EgoLaneReport report = MaxFAp(score, truth, 11);
  const testing::SweepResult oracle = BruteForceSweep(score, positive, 11);
  EXPECT_EQ(report.max_f, oracle.max_f);
  EXPECT_EQ(report.average_precision, oracle.ap);
  EXPECT_EQ(report.threshold, oracle.threshold);
  EXPECT_EQ(report.precision, oracle.precision);
  EXPECT_EQ(report.recall, oracle.recall);
  // Thresholds 0.5 and 0.6 separate the classes; the first wins.
  EXPECT_EQ(report.max_f, 1.);
  EXPECT_DOUBLE_EQ(report.threshold, 0.5);
}

TEST(MaxFApTest, ConstantScore) {
  const std::vector<double> score(6, 0.5);
  BinaryMask truth(6, 1);
  truth.set(0, 0);
  truth.set(3, 0);
  const EgoLaneReport report = MaxFAp(score, truth, 11);
  // Every threshold <= 0.5 labels everything positive: F1 = 2 * (1/3) / (4/3).
  EXPECT_DOUBLE_EQ(report.max_f, 0.5);
  EXPECT_EQ(report.threshold, 0.);
  const std::vector<std::uint8_t> positive = {1, 0, 0, 1, 0, 0};
  EXPECT_EQ(report.average_precision, BruteForceSweep(score, positive, 11).ap);
}

TEST(MaxFApTest, MatchesSweepOnRandomMaps) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> s(0., 1.);
  std::bernoulli_distribution b(0.4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> score(16);
    std::vector<std::uint8_t> positive(16);
    BinaryMask truth(4, 4);
    for (int i = 0; i < 16; ++i) {
      score[i] = s(rng);
      positive[i] = b(rng) || i == 0;
      truth.set(i % 4, i / 4, positive[i]);
    }
    const EgoLaneReport report = MaxFAp(score, truth);
    const testing::SweepResult oracle = BruteForceSweep(score, positive, 100);
    EXPECT_EQ(report.max_f, oracle.max_f);
    EXPECT_EQ(report.average_precision, oracle.ap);
    EXPECT_EQ(report.threshold, oracle.threshold);
  }
}

TEST(MaxFApTest, Errors) {
  const std::vector<double> score(4, 0.5);
  EXPECT_THROW(MaxFAp(score, BinaryMask(2, 2)), ValidationError);
  BinaryMask truth(2, 2);
  truth.set(0, 0);
  EXPECT_THROW(MaxFAp(score, truth, 1), ValidationError);
  EXPECT_THROW(MaxFAp(score, BinaryMask(3, 2)), ShapeError);
}

TEST(GroupForClassTest, MapsClassNamesToGroups) {
  EXPECT_EQ(GroupForClass("Car"), ObjectGroup::kVehicle);
  EXPECT_EQ(GroupForClass("tram"), ObjectGroup::kVehicle);
  EXPECT_EQ(GroupForClass("Cyclist"), ObjectGroup::kPerson);
  EXPECT_EQ(GroupForClass("Person_sitting"), ObjectGroup::kPerson);
  EXPECT_EQ(GroupForClass("Misc"), ObjectGroup::kMisc);
  EXPECT_EQ(GroupForClass("Vehicle"), ObjectGroup::kVehicle);
}

class BoxRecallTest : public ::testing::Test {
 protected:
  // Sets the first `n` pixels (row-major) of the 10x10 block at the origin.
  static LabelMask Covered(int n) {
    LabelMask mask(20, 20);
    for (int i = 0; i < n; ++i) mask.set(i % 10, i / 10, LabelClass::kObstacle);
    return mask;
  }
  BoundingBox box_{0., 0., 10., 10., ObjectGroup::kVehicle};
};

TEST_F(BoxRecallTest, FullyCovered) {
  const std::vector<BoundingBox> boxes = {box_};
  const DetReport report = BoxRecall(Covered(100), boxes);
  EXPECT_EQ(*report.groups[0].PixelRecall(), 1.);
  EXPECT_EQ(*report.groups[0].InstanceRecall(0), 1.);
  EXPECT_EQ(*report.groups[0].InstanceRecall(1), 1.);
  EXPECT_FALSE(report.groups[1].PixelRecall().has_value());
}

TEST_F(BoxRecallTest, SixtyPercent) {
  const std::vector<BoundingBox> boxes = {box_};
  const DetReport report = BoxRecall(Covered(60), boxes);
  EXPECT_EQ(report.all.box_pixels, 100u);
  EXPECT_DOUBLE_EQ(*report.all.PixelRecall(), 0.6);
  EXPECT_EQ(report.all.detected, (std::vector<std::size_t>{1, 0}));
}

TEST_F(BoxRecallTest, OverlapsCountPerBox) {
  const std::vector<BoundingBox> boxes = {box_, {5., 0., 15., 10., ObjectGroup::kVehicle}};
  const DetReport report = BoxRecall(Covered(100), boxes);
  EXPECT_EQ(report.all.box_pixels, 200u);
  EXPECT_EQ(report.all.obstacle_pixels, 150u);
  EXPECT_EQ(report.all.instances, 2u);
}

TEST_F(BoxRecallTest, BoxOutsideImageSkipped) {
  const std::vector<BoundingBox> boxes = {{30., 30., 40., 40., ObjectGroup::kMisc}};
  EXPECT_EQ(BoxRecall(Covered(100), boxes).all.instances, 0u);
}

TEST_F(BoxRecallTest, InstanceRecallMonotoneInThreshold) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> corner(0., 30.);
  std::uniform_real_distribution<double> size(1., 12.);
  std::vector<double> thresholds;
  for (int i = 0; i <= 20; ++i) thresholds.push_back(i / 20.);
  for (int trial = 0; trial < 100; ++trial) {
    const LabelMask pred = RandomLabels(rng, 32, 32);
    std::vector<BoundingBox> boxes;
    for (int i = 0; i < 5; ++i) {
      const double u = corner(rng);
      const double v = corner(rng);
      boxes.push_back({u, v, u + size(rng), v + size(rng),
                       static_cast<ObjectGroup>(i % 3)});
    }
    const DetReport report = BoxRecall(pred, boxes, thresholds);
    for (std::size_t t = 1; t < thresholds.size(); ++t) {
      EXPECT_LE(report.all.detected[t], report.all.detected[t - 1]);
    }
  }
}

TEST_F(BoxRecallTest, CsvColumns) {
  const std::vector<BoundingBox> boxes = {box_};
  std::ostringstream out;
  WriteDetCsv(BoxRecall(Covered(60), boxes), "all", out);
  const std::string csv = out.str();
  EXPECT_NE(csv.find("all,Vehicle,pixel_recall,0.6\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("all,Vehicle,instance_recall_50,1\n"), std::string::npos);
  EXPECT_NE(csv.find("all,Vehicle,instance_recall_75,0\n"), std::string::npos);
  EXPECT_NE(csv.find("all,Person,pixel_recall,null\n"), std::string::npos);
}

}  // namespace
}  // namespace pathlabel
