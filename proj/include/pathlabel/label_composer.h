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

#ifndef PATHLABEL_LABEL_COMPOSER_H_
#define PATHLABEL_LABEL_COMPOSER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathlabel/geometry.h"
#include "pathlabel/mask.h"
#include "pathlabel/obstacle_labeler.h"
#include "pathlabel/path_labeler.h"

namespace pathlabel {

enum class LabelClass : std::uint8_t {
  kUnknown = 0,
  kProposedPath = 1,
  kObstacle = 2,
};

inline constexpr int kNumLabelClasses = 3;

std::string_view LabelClassName(LabelClass label);

// Rows cut off at the top (sky) and bottom (bonnet) of the image.
struct CropSpec {
  int top_rows = 0;
  int bottom_rows = 0;

  // Rounds height * fraction to the nearest row.
  static CropSpec FromFractions(int height, double top_fraction = 0.15,
                                double bottom_fraction = 0.10);
  // Throws ValidationError unless top_rows + bottom_rows < height.
  void Validate(int height) const;
  friend bool operator==(const CropSpec&, const CropSpec&) = default;
};

// Per-pixel class image. Rows < crop_top() and rows >= crop_bottom() are
// always kUnknown.
class LabelMask {
 public:
  LabelMask() = default;
  LabelMask(int width, int height, CropSpec crop = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const CropSpec& crop() const { return crop_; }
  int crop_top() const { return crop_.top_rows; }
  int crop_bottom() const { return height_ - crop_.bottom_rows; }
  bool IsCropped(int row) const {
    return row < crop_top() || row >= crop_bottom();
  }

  LabelClass at(int col, int row) const {
    return static_cast<LabelClass>(labels_[Index(col, row)]);
  }
  // Writes to cropped rows are ignored.
  void set(int col, int row, LabelClass label) {
    if (!IsCropped(row)) labels_[Index(col, row)] = static_cast<std::uint8_t>(label);
  }

  std::array<std::size_t, kNumLabelClasses> ClassCounts() const;

  std::span<const std::uint8_t> data() const { return labels_; }

  // Builds a mask from raw values. Throws FormatError on values outside
  // {0, 1, 2} and ValidationError if a cropped row is not kUnknown.
  static LabelMask FromRaw(int width, int height, CropSpec crop,
                           std::span<const std::uint8_t> values);

  friend bool operator==(const LabelMask&, const LabelMask&) = default;

 private:
  std::size_t Index(int col, int row) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  int width_ = 0;
  int height_ = 0;
  CropSpec crop_;
  std::vector<std::uint8_t> labels_;
};

// Obstacle wins over path, path wins over unknown; cropped rows are unknown.
// Throws ShapeError if the masks differ in size.
LabelMask Compose(const BinaryMask& path, const BinaryMask& obstacle,
                  const CropSpec& crop);

enum class SensorMode {
  // Raw scans: fit the ground plane and keep points above it.
  kRawCloud,
  // Scans that only contain obstacle returns, used as-is.
  kPrefilteredContours,
};

std::string_view SensorModeName(SensorMode mode);
// Accepts "raw_cloud" and "prefiltered_contours"; throws ParseError otherwise.
SensorMode ParseSensorMode(std::string_view name);

struct SensorRig {
  CameraModel camera;
  RigidTransform camera_from_sensor;
  ContactCalibration contact;
};

struct LabelingParams {
  double lookahead_distance = kDefaultLookaheadDistance;
  double guard_band = kDefaultGuardBand;
  double obstacle_height = kDefaultObstacleHeight;
  GroundRegion ground_region;
  MlesacParams mlesac;
  SensorMode sensor_mode = SensorMode::kRawCloud;
};

// splitmix64 of (global_seed, frame_index); the per-frame MLESAC seed.
std::uint64_t FrameSeed(std::uint64_t global_seed, std::size_t frame_index);

struct LabelResult {
  LabelMask mask;
  Lookahead lookahead;
  std::size_t quads = 0;
  std::size_t degenerate_quads = 0;
  std::size_t obstacle_pixels = 0;
  std::optional<Plane> ground_plane;
};

// Labels frame `index` of a recording whose odometry is `relatives`
// (relatives[i] = G_{C_i C_{i+1}}). `cloud` is the scan of that frame in the
// sensor frame. The MLESAC seed is FrameSeed(params.mlesac.random_seed,
// index).
//
// Throws EstimationFailedError when the ground plane cannot be fitted; such
// frames must be skipped rather than labelled without obstacles.
LabelResult LabelFrame(std::span<const RigidTransform> relatives,
                       std::size_t index, const PointCloud& cloud,
                       const SensorRig& rig, const CropSpec& crop,
                       const LabelingParams& params);

}  // namespace pathlabel

#endif  // PATHLABEL_LABEL_COMPOSER_H_
