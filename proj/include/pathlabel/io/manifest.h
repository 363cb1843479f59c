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

#ifndef PATHLABEL_IO_MANIFEST_H_
#define PATHLABEL_IO_MANIFEST_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathlabel/geometry.h"
#include "pathlabel/io/config.h"
#include "pathlabel/io/pose_io.h"
#include "pathlabel/label_composer.h"

namespace pathlabel::io {

// Reads the `key: 12 numbers` line of a KITTI-style calibration file as a
// row-major 3x4 matrix. Throws ParseError if the key is missing or malformed.
Eigen::Matrix<double, 3, 4> ReadCalibrationMatrix(
    const std::filesystem::path& path, std::string_view key);

// Resolution and sensor defaults of a known recording setup.
struct DatasetProfile {
  std::string name;
  int image_width = 0;
  int image_height = 0;
  SensorMode sensor_mode = SensorMode::kRawCloud;
  double vehicle_width = 0.;
};

// "kitti" (621x187, raw clouds) and "oxford" (640x256, pre-filtered
// contours). Returns std::nullopt for anything else.
std::optional<DatasetProfile> FindProfile(std::string_view name);

struct SequencePaths {
  std::string name;
  std::filesystem::path calib;
  std::filesystem::path poses;
  std::optional<std::filesystem::path> timestamps;
  std::filesystem::path clouds;
  std::optional<std::filesystem::path> images;
};

// A key = value file describing where a dataset lives. Paths may contain
// `{seq}`, replaced by each sequence name, and are resolved against `root`;
// a relative `root` is resolved against the manifest's directory.
//
//   profile = kitti
//   root = /data/kitti/odometry
//   sequences = 00, 05
//   poses = poses/{seq}.txt
//   pose_convention = absolute
//   frames = 0:500
//
// Every referenced file and directory must exist when the manifest is loaded.
struct DatasetManifest {
  std::filesystem::path source;
  std::string profile = "custom";
  std::filesystem::path root;
  std::vector<SequencePaths> sequences;
  SensorMode sensor_mode = SensorMode::kRawCloud;
  int image_width = 0;
  int image_height = 0;
  std::string projection_key = "P2";
  std::string extrinsic_key = "Tr";
  // Applied to the first two rows of the projection matrix, e.g. 0.5 when the
  // images were downsampled by two.
  double projection_scale = 1.;
  PoseConvention pose_convention = PoseConvention::kRelative;
  // Used when there is no timestamp file.
  double frame_rate = 10.;
  std::optional<std::filesystem::path> vehicle_config;
  // Frames to label (`frames = 0:100, 250`); defaults to every frame.
  std::optional<std::vector<std::size_t>> frames;

  static const std::vector<std::string_view>& Keys();
  // Throws ParseError, ValidationError or IoError.
  static DatasetManifest Load(const std::filesystem::path& path);

  // Manifest values over the vehicle config file, if any.
  PipelineConfig LoadPipelineConfig() const;
};

// Everything needed to label the frames of one sequence.
struct Sequence {
  SequencePaths paths;
  SensorRig rig;
  std::vector<RigidTransform> relatives;
  std::vector<double> timestamps;

  std::size_t frame_count() const { return relatives.size() + 1; }
  std::filesystem::path CloudPath(std::size_t frame) const;
  std::optional<std::filesystem::path> ImagePath(std::size_t frame) const;
};

// "000042".
std::string FrameName(std::size_t frame);

Sequence LoadSequence(const DatasetManifest& manifest,
                      const SequencePaths& paths,
                      const ContactCalibration& contact);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_MANIFEST_H_
