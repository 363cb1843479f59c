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

#ifndef PATHLABEL_IO_SYNTHETIC_H_
#define PATHLABEL_IO_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "pathlabel/geometry.h"
#include "pathlabel/io/config.h"
#include "pathlabel/label_composer.h"
#include "pathlabel/metrics.h"

namespace pathlabel::io {

// `frames` frame intervals at constant speed (metres per frame) and yaw rate
// (radians per frame, positive turns right).
struct TrajectorySegment {
  std::size_t frames = 0;
  double speed = 0.;
  double yaw_rate = 0.;
};

// Upright cuboid standing on the ground, aligned with the trajectory heading
// at `distance` metres along the driven path and shifted `lateral` metres to
// the right of it.
struct BoxObstacle {
  double distance = 0.;
  double lateral = 0.;
  double length = 4.;
  double width = 1.8;
  double height = 1.5;
};

// A flat world driven by a camera at constant height. The world frame is the
// camera frame of frame 0 (x right, y down, z forward); the ground is the
// plane y = camera_height. The scanner frame has x forward, y left and z up.
struct SyntheticScene {
  std::uint64_t seed = 0;
  double frame_rate = 10.;
  std::vector<TrajectorySegment> segments;
  std::vector<BoxObstacle> boxes;

  int image_width = 640;
  int image_height = 256;
  double fx = 320.;
  double fy = 320.;
  double cx = 320.;
  double cy = 128.;

  double camera_height = 1.65;
  double vehicle_width = 2.2;
  double contact_forward = 0.;
  // Scanner origin in the camera frame.
  Eigen::Vector3d sensor_offset = Eigen::Vector3d(0., -0.08, -0.27);

  // Standard deviation of the Gaussian noise added to every coordinate.
  double noise_sigma = 0.;
  // Fraction of ground returns replaced by points scattered below
  // obstacle_height.
  double outlier_fraction = 0.;
  // Ground returns must outnumber those of any single box face, or the
  // robust fit may prefer a face.
  double ground_spacing = 0.1;
  double ground_forward = 45.;
  double ground_backward = 5.;
  double ground_lateral = 15.;
  double obstacle_spacing = 0.02;
  // Box parts at or below this height above the ground are not obstacles.
  double obstacle_height = kDefaultObstacleHeight;

  double lookahead_distance = kDefaultLookaheadDistance;
  double crop_top_fraction = 0.15;
  double crop_bottom_fraction = 0.10;

  // Frames that get a scan and an analytic label.
  std::vector<std::size_t> label_frames;

  static const std::vector<std::string_view>& Keys();
  // Reads a key = value scene file, e.g.
  //   segments = 40:1.3:0, 30:1.3:0.05
  //   boxes = 25 0 4 1.8 1.5; 45 -0.5 4 1.8 1.5
  //   label_frames = 0, 10
  static SyntheticScene FromConfig(const KeyValueConfig& config);
  static SyntheticScene Load(const std::filesystem::path& path);

  // Throws ValidationError for degenerate scenes: zero-length trajectories,
  // turns tighter than half the vehicle width, non-positive extents and
  // label frames past the end.
  void Validate() const;

  std::size_t frame_count() const;
  double TrajectoryLength() const;
  CameraModel Camera() const;
  RigidTransform CameraFromSensor() const;
  ContactCalibration Contact() const;
  CropSpec Crop() const;
  // Pipeline settings that reproduce this scene's assumptions.
  PipelineConfig Pipeline() const;
};

struct SyntheticFrame {
  std::size_t index = 0;
  PointCloud cloud;
  LabelMask truth;
  // Image-space boxes of the obstacles in front of the camera.
  std::vector<BoundingBox> boxes;
  std::size_t lookahead = 0;
  bool truncated = false;
};

struct SyntheticData {
  // Closed-form camera poses in the world frame.
  std::vector<RigidTransform> absolute;
  std::vector<RigidTransform> relatives;
  std::vector<double> timestamps;
  std::vector<SyntheticFrame> frames;
};

// Renders poses, scans and analytic labels. The path label of frame t is the
// exact region swept by the contact segment over the look-ahead window,
// intersected with each pixel centre's ground ray; the obstacle label is the
// exact per-column extent of every box's silhouette above obstacle_height.
// Seed-deterministic. Throws ValidationError for invalid scenes and for boxes
// that straddle the image plane of a label frame.
SyntheticData GenerateSynthetic(const SyntheticScene& scene);

// Analytic label for frame `t` alone (no scan).
LabelMask AnalyticLabel(const SyntheticScene& scene, std::size_t t,
                        std::size_t* lookahead = nullptr,
                        bool* truncated = nullptr);

// Writes a self-contained dataset under `out`: manifest.txt, vehicle.cfg,
// calib.txt, poses.txt, times.txt, clouds/, images/, truth/ and boxes.txt.
void WriteSynthetic(const SyntheticScene& scene, const SyntheticData& data,
                    const std::filesystem::path& out);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_SYNTHETIC_H_
