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

#ifndef PATHLABEL_PATH_LABELER_H_
#define PATHLABEL_PATH_LABELER_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "pathlabel/geometry.h"
#include "pathlabel/mask.h"

namespace pathlabel {

inline constexpr double kDefaultLookaheadDistance = 60.;
// Projected vertices further than this many image sizes outside the image are
// flagged not-visible.
inline constexpr double kDefaultGuardBand = 100.;

// Ground contact points of the front wheels in the camera frame.
struct ContactCalibration {
  Point3 left = Point3::Zero();
  Point3 right = Point3::Zero();

  // Contacts at x = -/+ width/2 (camera x points right), `height_below` below
  // the optical centre and `forward` metres along the optical axis.
  static ContactCalibration FromVehicle(double width, double height_below,
                                        double forward);

  double Track() const { return (right - left).norm(); }
  // Throws ValidationError if the points coincide or are not finite.
  void Validate() const;
};

struct Lookahead {
  std::size_t frames = 0;
  // Set when the recording ended before the distance was exceeded; `frames`
  // is then the largest available count.
  bool truncated = false;
  double distance = 0.;
};

// Smallest k such that the left contact point moves more than `min_distance`
// between frame `start` and frame `start + k`.
Lookahead ChooseLookahead(std::span<const RigidTransform> relatives,
                          std::size_t start, const ContactCalibration& contact,
                          double min_distance = kDefaultLookaheadDistance);

// Index j holds the contacts of frame start + j projected into frame start.
struct PathPolyline {
  std::vector<Pixel> left;
  std::vector<Pixel> right;
  std::vector<bool> left_visible;
  std::vector<bool> right_visible;

  std::size_t size() const { return left.size(); }
};

PathPolyline ProjectContacts(const CameraModel& camera,
                             std::span<const RigidTransform> relatives,
                             std::size_t start, std::size_t count,
                             const ContactCalibration& contact,
                             double guard_band = kDefaultGuardBand);

using Quad = std::array<Pixel, 4>;

// Emits (left_j, left_{j-1}, right_{j-1}, right_j) for j = 1..k, skipping
// quads that touch a not-visible vertex.
std::vector<Quad> PathQuads(const PathPolyline& polyline);

// A pixel is set iff its centre (col + 0.5, row + 0.5) lies on the boundary
// of, or inside (even-odd rule), at least one of the quads.
BinaryMask RasterizeQuads(std::span<const Quad> quads, int width, int height);

// The per-pixel predicate used by RasterizeQuads().
bool QuadContains(const Quad& quad, const Pixel& point);

}  // namespace pathlabel

#endif  // PATHLABEL_PATH_LABELER_H_
