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

#ifndef PATHLABEL_OBSTACLE_LABELER_H_
#define PATHLABEL_OBSTACLE_LABELER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "pathlabel/geometry.h"
#include "pathlabel/mask.h"

namespace pathlabel {

inline constexpr double kDefaultObstacleHeight = 0.25;

// Points in the obstacle sensor frame. `intensity` is either empty or has one
// entry per point.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<float> intensity;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_intensity() const { return !intensity.empty(); }
  // Throws ValidationError on non-finite coordinates or mismatched intensity.
  void Validate() const;
};

// n . x + d = 0 with |n| = 1. Points above the ground have positive signed
// distance.
struct Plane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.;

  double SignedDistance(const Point3& p) const { return normal.dot(p) + offset; }
};

struct MlesacParams {
  int iterations = 200;
  double inlier_sigma = 0.05;
  // Residuals are capped at this value in the cost. Defaults to 3 sigma.
  double max_inlier_cost = 0.15;
  std::uint64_t random_seed = 0;
  // Used to orient the normal only when the sensor origin lies on the plane.
  Eigen::Vector3d up_hint = Eigen::Vector3d::UnitZ();

  void Validate() const;
};

// Sum over points of min(r^2, max_inlier_cost^2), r the point-plane distance.
double MlesacCost(std::span<const Point3> points, const Plane& plane,
                  double max_inlier_cost);

// Robust ground plane from random minimal samples, scored with MlesacCost()
// and refined by least squares over the inliers of the best hypothesis. The
// refinement is kept only when it does not increase the cost. The normal is
// oriented so that the sensor origin lies above the plane.
//
// If `candidate_costs` is not null, the cost of every non-degenerate sampled
// hypothesis is appended to it.
//
// Throws EstimationFailedError for fewer than three points or when every
// sample is degenerate.
Plane FitGroundPlane(const PointCloud& cloud, const MlesacParams& params,
                     std::vector<double>* candidate_costs = nullptr);

// Keeps the points strictly more than `height_threshold` above the plane.
PointCloud FilterObstaclePoints(const PointCloud& cloud, const Plane& plane,
                                double height_threshold =
                                    kDefaultObstacleHeight);

// Axis-aligned region of the sensor frame used to select ground-fit
// candidates: 0 <= x <= forward, |y| <= lateral.
struct GroundRegion {
  double forward = 40.;
  double lateral = 15.;
};

PointCloud CropToGroundRegion(const PointCloud& cloud,
                              const GroundRegion& region);

// Maps every point through `camera_from_sensor` and projects it. Points
// behind the camera or outside the image are dropped.
std::vector<Pixel> ProjectObstacles(const CameraModel& camera,
                                    const RigidTransform& camera_from_sensor,
                                    const PointCloud& obstacles);

// Sets rows 0..floor(v) of column floor(u) for every pixel.
BinaryMask StixelFill(std::span<const Pixel> pixels, int width, int height);

}  // namespace pathlabel

#endif  // PATHLABEL_OBSTACLE_LABELER_H_
