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

#include <cmath>
#include <string>

#include "glog/logging.h"
#include "pathlabel/error.h"

namespace pathlabel {

namespace {

double SignedArea(const Quad& q) {
  double area = 0.;
  for (int i = 0; i < 4; ++i) {
    const Pixel& a = q[i];
    const Pixel& b = q[(i + 1) % 4];
    area += a.u * b.v - b.u * a.v;
  }
  return 0.5 * area;
}

}  // namespace

std::string_view LabelClassName(LabelClass label) {
  switch (label) {
    case LabelClass::kUnknown:
      return "unknown";
    case LabelClass::kProposedPath:
      return "proposed_path";
    case LabelClass::kObstacle:
      return "obstacle";
  }
  return "invalid";
}

CropSpec CropSpec::FromFractions(int height, double top_fraction,
                                 double bottom_fraction) {
  if (!(top_fraction >= 0. && bottom_fraction >= 0.)) {
    throw ValidationError("crop fractions must be non-negative");
  }
  CropSpec crop{static_cast<int>(std::lround(height * top_fraction)),
                static_cast<int>(std::lround(height * bottom_fraction))};
  crop.Validate(height);
  return crop;
}

void CropSpec::Validate(int height) const {
  if (top_rows < 0 || bottom_rows < 0 || top_rows + bottom_rows >= height) {
    throw ValidationError("crop of " + std::to_string(top_rows) + " + " +
                          std::to_string(bottom_rows) +
                          " rows leaves nothing of a " +
                          std::to_string(height) + "-row image");
  }
}

LabelMask::LabelMask(int width, int height, CropSpec crop)
    : width_(width), height_(height), crop_(crop) {
  if (width < 0 || height < 0) {
    throw ShapeError("negative label size " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  if (height > 0) crop.Validate(height);
  labels_.assign(static_cast<std::size_t>(width) * height, 0);
}

std::array<std::size_t, kNumLabelClasses> LabelMask::ClassCounts() const {
  std::array<std::size_t, kNumLabelClasses> counts{};
  for (const std::uint8_t l : labels_) ++counts[l];
  return counts;
}

LabelMask LabelMask::FromRaw(int width, int height, CropSpec crop,
                             std::span<const std::uint8_t> values) {
  LabelMask mask(width, height, crop);
  if (values.size() != mask.labels_.size()) {
    throw ShapeError("expected " + std::to_string(mask.labels_.size()) +
                     " label values, got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= kNumLabelClasses) {
      throw FormatError("label value " + std::to_string(values[i]) +
                        " at pixel " + std::to_string(i) +
                        " is not one of 0, 1, 2");
    }
    const int row = static_cast<int>(i / width);
    if (values[i] != 0 && mask.IsCropped(row)) {
      throw ValidationError("cropped row " + std::to_string(row) +
                            " holds a non-unknown label");
    }
  }
  mask.labels_.assign(values.begin(), values.end());
  return mask;
}

LabelMask Compose(const BinaryMask& path, const BinaryMask& obstacle,
                  const CropSpec& crop) {
  if (path.width() != obstacle.width() || path.height() != obstacle.height()) {
    throw ShapeError("path mask is " + std::to_string(path.width()) + "x" +
                     std::to_string(path.height()) + " but obstacle mask is " +
                     std::to_string(obstacle.width()) + "x" +
                     std::to_string(obstacle.height()));
  }
  LabelMask labels(path.width(), path.height(), crop);
  for (int row = labels.crop_top(); row < labels.crop_bottom(); ++row) {
    for (int col = 0; col < labels.width(); ++col) {
      if (obstacle.at(col, row)) {
        labels.set(col, row, LabelClass::kObstacle);
      } else if (path.at(col, row)) {
        labels.set(col, row, LabelClass::kProposedPath);
      }
    }
  }
  return labels;
}

std::string_view SensorModeName(SensorMode mode) {
  return mode == SensorMode::kRawCloud ? "raw_cloud" : "prefiltered_contours";
}

SensorMode ParseSensorMode(std::string_view name) {
  if (name == "raw_cloud") return SensorMode::kRawCloud;
  if (name == "prefiltered_contours") return SensorMode::kPrefilteredContours;
  throw ParseError("unknown sensor mode '" + std::string(name) +
                   "' (expected raw_cloud or prefiltered_contours)");
}

std::uint64_t FrameSeed(std::uint64_t global_seed, std::size_t frame_index) {
  std::uint64_t z = global_seed + 0x9e3779b97f4a7c15ULL *
                                      (static_cast<std::uint64_t>(frame_index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

LabelResult LabelFrame(std::span<const RigidTransform> relatives,
                       std::size_t index, const PointCloud& cloud,
                       const SensorRig& rig, const CropSpec& crop,
                       const LabelingParams& params) {
  const int width = rig.camera.width();
  const int height = rig.camera.height();
  LabelResult result;

  result.lookahead = ChooseLookahead(relatives, index, rig.contact,
                                     params.lookahead_distance);
  if (result.lookahead.truncated) {
    LOG(WARNING) << "frame " << index << ": recording ends after "
                 << result.lookahead.frames << " frames ("
                 << result.lookahead.distance << " m of look-ahead)";
  }
  const PathPolyline polyline =
      ProjectContacts(rig.camera, relatives, index, result.lookahead.frames,
                      rig.contact, params.guard_band);
  const std::vector<Quad> quads = PathQuads(polyline);
  result.quads = quads.size();
  for (const Quad& q : quads) {
    if (std::abs(SignedArea(q)) < 1e-9) ++result.degenerate_quads;
  }
  if (result.degenerate_quads > 0) {
    LOG(WARNING) << "frame " << index << ": " << result.degenerate_quads
                 << " zero-area path quads (stationary odometry?)";
  }
  const BinaryMask path = RasterizeQuads(quads, width, height);

  PointCloud obstacles;
  if (params.sensor_mode == SensorMode::kRawCloud) {
    MlesacParams mlesac = params.mlesac;
    mlesac.random_seed = FrameSeed(params.mlesac.random_seed, index);
    const PointCloud candidates =
        CropToGroundRegion(cloud, params.ground_region);
    result.ground_plane = FitGroundPlane(candidates, mlesac);
    obstacles =
        FilterObstaclePoints(cloud, *result.ground_plane, params.obstacle_height);
  } else {
    obstacles = cloud;
  }
  const std::vector<Pixel> pixels =
      ProjectObstacles(rig.camera, rig.camera_from_sensor, obstacles);
  const BinaryMask obstacle = StixelFill(pixels, width, height);
  result.obstacle_pixels = obstacle.Count();

  result.mask = Compose(path, obstacle, crop);
  return result;
}

}  // namespace pathlabel
