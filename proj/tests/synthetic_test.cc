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

#include "pathlabel/io/synthetic.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "pathlabel/error.h"
#include "pathlabel/io/label_io.h"
#include "pathlabel/io/manifest.h"
#include "pathlabel/io/pipeline.h"
#include "pathlabel/io/text.h"
#include "pathlabel/metrics.h"

namespace pathlabel::io {
namespace {

namespace fs = std::filesystem;
using testing::Agreement;

LabelResult LabelSynthetic(const SyntheticScene& scene, const SyntheticData& data,
                           const SyntheticFrame& frame) {
  const SensorRig rig{scene.Camera(), scene.CameraFromSensor(), scene.Contact()};
  return LabelFrame(data.relatives, frame.index, frame.cloud, rig, scene.Crop(),
                    scene.Pipeline().labeling);
}

SyntheticScene StraightScene() {
  SyntheticScene scene;
  scene.seed = 3;
  scene.segments = {{80, 1.3, 0.}};
  scene.label_frames = {0, 5};
  return scene;
}

TEST(SyntheticSceneTest, ZeroLengthTrajectoryRejected) {
  SyntheticScene scene;
  scene.segments = {{10, 0., 0.}};
  EXPECT_THROW(scene.Validate(), ValidationError);
  EXPECT_THROW(GenerateSynthetic(scene), ValidationError);
  scene.segments.clear();
  EXPECT_THROW(scene.Validate(), ValidationError);
}

TEST(SyntheticSceneTest, DegenerateScenesRejected) {
  SyntheticScene scene = StraightScene();
  scene.segments = {{40, 0.05, 0.1}};
  EXPECT_THROW(scene.Validate(), ValidationError);
  scene = StraightScene();
  scene.boxes = {{20., 0., 4., 0., 1.5}};
  EXPECT_THROW(scene.Validate(), ValidationError);
  scene = StraightScene();
  scene.label_frames = {81};
  EXPECT_THROW(scene.Validate(), ValidationError);
  EXPECT_NO_THROW(StraightScene().Validate());
}

TEST(SyntheticSceneTest, ParsesSceneFile) {
  const SyntheticScene scene = SyntheticScene::FromConfig(KeyValueConfig::Parse(
      "seed = 9\nsegments = 40:1.3:0, 30:1.2:0.05\n"
      "boxes = 25 0 4 1.8 1.5; 45 -0.5 3 1.6 1.2\nlabel_frames = 0, 10\n"));
  EXPECT_EQ(scene.seed, 9u);
  ASSERT_EQ(scene.segments.size(), 2u);
  EXPECT_EQ(scene.segments[1].yaw_rate, 0.05);
  ASSERT_EQ(scene.boxes.size(), 2u);
  EXPECT_EQ(scene.boxes[1].lateral, -0.5);
  EXPECT_EQ(scene.label_frames, (std::vector<std::size_t>{0, 10}));
  EXPECT_EQ(scene.frame_count(), 71u);
  EXPECT_NEAR(scene.TrajectoryLength(), 40 * 1.3 + 30 * 1.2, 1e-12);
  EXPECT_THROW(SyntheticScene::FromConfig(KeyValueConfig::Parse("segments = 4:1\n")),
               ParseError);
}

TEST(SyntheticSceneTest, ClosedFormPosesMatchChain) {
  SyntheticScene scene = StraightScene();
  scene.segments = {{20, 1., 0.}, {30, 1.1, -0.04}};
  scene.label_frames = {};
  const SyntheticData data = GenerateSynthetic(scene);
  ASSERT_EQ(data.relatives.size(), 50u);
  for (std::size_t t = 0; t < data.absolute.size(); t += 7) {
    const Eigen::Matrix4d chain = testing::NaiveChain(data.relatives, 0, t);
    EXPECT_LE((chain - data.absolute[t].ToMatrix()).cwiseAbs().maxCoeff(), 1e-9);
  }
  EXPECT_NEAR(YawOf(data.relatives[30]), -0.04, 1e-12);
  EXPECT_NEAR(data.timestamps[10], 1., 1e-12);
}

TEST(SyntheticSceneTest, SeedDeterministic) {
  SyntheticScene scene = StraightScene();
  scene.noise_sigma = 0.02;
  scene.outlier_fraction = 0.1;
  const SyntheticData a = GenerateSynthetic(scene);
  const SyntheticData b = GenerateSynthetic(scene);
  ASSERT_EQ(a.frames.size(), 2u);
  EXPECT_EQ(a.frames[0].cloud.points, b.frames[0].cloud.points);
  scene.seed = 4;
  EXPECT_NE(GenerateSynthetic(scene).frames[0].cloud.points, a.frames[0].cloud.points);
}

TEST(SyntheticLabelTest, StraightNoObstacles) {
  const SyntheticScene scene = StraightScene();
  const SyntheticData data = GenerateSynthetic(scene);
  for (const SyntheticFrame& frame : data.frames) {
    const LabelResult result = LabelSynthetic(scene, data, frame);
    EXPECT_EQ(result.lookahead.frames, frame.lookahead);
    EXPECT_GE(Agreement(result.mask, frame.truth), 0.999) << frame.index;
    EXPECT_EQ(result.mask.ClassCounts()[2], 0u);
  }
}

TEST(SyntheticLabelTest, InLaneBoxCutsPath) {
  SyntheticScene scene = StraightScene();
  scene.boxes = {{30., 0., 4., 1.8, 1.5}};
  const SyntheticData data = GenerateSynthetic(scene);
  const SyntheticFrame& frame = data.frames[0];
  const LabelResult result = LabelSynthetic(scene, data, frame);
  EXPECT_GE(Agreement(result.mask, frame.truth), 0.99);
  ASSERT_EQ(frame.boxes.size(), 1u);
  const BoundingBox& box = frame.boxes[0];
  // In the box's columns, everything from the top of the crop down to the
  // silhouette's base is obstacle in both labels, and the path resumes below.
  std::size_t mismatched = 0;
  std::size_t checked = 0;
  const int first = static_cast<int>(std::ceil(box.min_u - 0.5));
  const int last = static_cast<int>(std::floor(box.max_u - 0.5));
  for (int c = first; c <= last; ++c) {
    for (int r = result.mask.crop_top(); r < result.mask.crop_bottom(); ++r) {
      ++checked;
      if (result.mask.at(c, r) != frame.truth.at(c, r)) ++mismatched;
    }
    EXPECT_EQ(frame.truth.at(c, result.mask.crop_top()), LabelClass::kObstacle);
    EXPECT_EQ(frame.truth.at(c, result.mask.crop_bottom() - 1),
              LabelClass::kProposedPath);
  }
  ASSERT_GT(checked, 0u);
  EXPECT_LE(static_cast<double>(mismatched) / checked, 0.02);
}

TEST(SyntheticLabelTest, CurvedNoisyScene) {
  SyntheticScene scene;
  scene.seed = 11;
  scene.segments = {{30, 1.2, 0.}, {60, 1.2, 0.05}};
  scene.boxes = {{40., 0.3, 4., 1.8, 1.5}};
  scene.noise_sigma = 0.02;
  scene.label_frames = {20};
  const SyntheticData data = GenerateSynthetic(scene);
  const LabelResult result = LabelSynthetic(scene, data, data.frames[0]);
  EXPECT_GE(Agreement(result.mask, data.frames[0].truth), 0.97);
}

TEST(SyntheticLabelTest, TruncatedNearEnd) {
  SyntheticScene scene = StraightScene();
  scene.label_frames = {75};
  const SyntheticData data = GenerateSynthetic(scene);
  EXPECT_TRUE(data.frames[0].truncated);
  EXPECT_EQ(data.frames[0].lookahead, 5u);
  const LabelResult result = LabelSynthetic(scene, data, data.frames[0]);
  EXPECT_TRUE(result.lookahead.truncated);
  EXPECT_GT(result.mask.ClassCounts()[1], 0u);
  EXPECT_GE(Agreement(result.mask, data.frames[0].truth), 0.99);
}

class SyntheticDatasetTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("pathlabel_dataset_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    scene_ = StraightScene();
    scene_.boxes = {{30., 0., 4., 1.8, 1.5}};
    WriteSynthetic(scene_, GenerateSynthetic(scene_), dir_ / "data");
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  SyntheticScene scene_;
};

TEST_F(SyntheticDatasetTest, ManifestLoads) {
  const DatasetManifest manifest = DatasetManifest::Load(dir_ / "data/manifest.txt");
  ASSERT_EQ(manifest.sequences.size(), 1u);
  EXPECT_EQ(manifest.frames, (std::vector<std::size_t>{0, 5}));
  const PipelineConfig config = manifest.LoadPipelineConfig();
  const Sequence seq =
      LoadSequence(manifest, manifest.sequences[0], config.Contact());
  EXPECT_EQ(seq.frame_count(), 81u);
  EXPECT_EQ(seq.rig.camera.width(), 640);
  EXPECT_TRUE(seq.rig.camera_from_sensor.ToMatrix().isApprox(
      scene_.CameraFromSensor().ToMatrix()));
  EXPECT_NEAR(seq.timestamps[10], 1., 1e-12);
}

TEST_F(SyntheticDatasetTest, LabelThenEvaluate) {
  const DatasetManifest manifest = DatasetManifest::Load(dir_ / "data/manifest.txt");
  const LabelRunSummary summary = LabelDataset(
      manifest, manifest.LoadPipelineConfig(), dir_ / "out", dir_ / "overlay");
  EXPECT_EQ(summary.labelled, 2u);
  EXPECT_TRUE(summary.skipped.empty());
  EXPECT_TRUE(fs::exists(dir_ / "overlay/000005.png"));

  const SegReport self =
      MakeSegReport(EvaluateSegmentationDirs(dir_ / "out", dir_ / "out"));
  for (const ClassScores& s : self.per_class) {
    if (s.iou) EXPECT_EQ(*s.iou, 1.);
  }
  std::size_t frames = 0;
  const SegReport truth = MakeSegReport(
      EvaluateSegmentationDirs(dir_ / "out", dir_ / "data/truth", &frames));
  EXPECT_EQ(frames, 2u);
  EXPECT_GT(*truth.per_class[1].iou, 0.97);
  EXPECT_GT(*truth.per_class[2].iou, 0.95);

  const DetReport det = EvaluateObstacleDirs(
      dir_ / "out", ReadBoxes(dir_ / "data/boxes.txt"), {0.5, 0.75});
  EXPECT_EQ(det.all.instances, 2u);
  EXPECT_EQ(det.all.detected, (std::vector<std::size_t>{2, 2}));
}

TEST_F(SyntheticDatasetTest, LabelOutputIndependentOfThreads) {
  const DatasetManifest manifest = DatasetManifest::Load(dir_ / "data/manifest.txt");
  PipelineConfig config = manifest.LoadPipelineConfig();
  config.threads = 1;
  LabelDataset(manifest, config, dir_ / "one");
  config.threads = 3;
  LabelDataset(manifest, config, dir_ / "three");
  for (const char* name : {"000000.png", "000005.png", "000005.json"}) {
    EXPECT_EQ(ReadTextFile(dir_ / "one" / name), ReadTextFile(dir_ / "three" / name));
  }
}

TEST_F(SyntheticDatasetTest, SampleDataset) {
  const DatasetManifest manifest = DatasetManifest::Load(dir_ / "data/manifest.txt");
  const std::vector<SampledFrame> frames =
      SampleDataset(manifest, manifest.LoadPipelineConfig(), 5);
  ASSERT_EQ(frames.size(), 5u);
  for (const SampledFrame& f : frames) {
    EXPECT_EQ(f.yaw_rate, 0.);
    // 10 Hz recording subsampled to 4 Hz keeps every third frame.
    EXPECT_EQ(f.frame % 3, 0u);
  }
}

TEST_F(SyntheticDatasetTest, MissingPredictionIsIoError) {
  fs::create_directories(dir_ / "empty");
  EXPECT_THROW(EvaluateSegmentationDirs(dir_ / "empty", dir_ / "data/truth"),
               IoError);
  EXPECT_THROW(EvaluateSegmentationDirs(dir_ / "data/truth", dir_ / "empty"),
               ValidationError);
}

TEST_F(SyntheticDatasetTest, ManifestErrors) {
  WriteTextFile(dir_ / "data/bad.txt", "image_width = 640\nimage_height = 256\nposes = nowhere.txt\n");
  EXPECT_THROW(DatasetManifest::Load(dir_ / "data/bad.txt"), IoError);
  WriteTextFile(dir_ / "data/kitti.txt",
                "profile = kitti\nroot = .\nimage_width = 640\nimage_height = 256\n");
  EXPECT_THROW(DatasetManifest::Load(dir_ / "data/kitti.txt"), ValidationError);
  WriteTextFile(dir_ / "data/typo.txt", "profle = kitti\n");
  EXPECT_THROW(DatasetManifest::Load(dir_ / "data/typo.txt"), ParseError);
}

TEST(ManifestTest, Profiles) {
  const auto kitti = FindProfile("kitti");
  ASSERT_TRUE(kitti.has_value());
  EXPECT_EQ(kitti->image_width, 621);
  EXPECT_EQ(kitti->image_height, 187);
  EXPECT_EQ(kitti->vehicle_width, 2.2);
  const auto oxford = FindProfile("oxford");
  ASSERT_TRUE(oxford.has_value());
  EXPECT_EQ(oxford->image_width, 640);
  EXPECT_EQ(oxford->sensor_mode, SensorMode::kPrefilteredContours);
  EXPECT_EQ(oxford->vehicle_width, 2.43);
  EXPECT_FALSE(FindProfile("nuscenes").has_value());
}

}  // namespace
}  // namespace pathlabel::io
