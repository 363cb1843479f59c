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

#include "pathlabel/path_labeler.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "pathlabel/error.h"

namespace pathlabel {

namespace {

bool Crosses(const Pixel& a, const Pixel& b, double row_center) {
  return (a.v > row_center) != (b.v > row_center);
}

// Only valid when Crosses(a, b, row_center) or a.v != b.v.
double CrossingU(const Pixel& a, const Pixel& b, double row_center) {
  return a.u + (row_center - a.v) * (b.u - a.u) / (b.v - a.v);
}

bool OnSegment(const Pixel& a, const Pixel& b, double u, double v) {
  const double cross = (b.u - a.u) * (v - a.v) - (b.v - a.v) * (u - a.u);
  if (cross != 0.) return false;
  return u >= std::min(a.u, b.u) && u <= std::max(a.u, b.u) &&
         v >= std::min(a.v, b.v) && v <= std::max(a.v, b.v);
}

bool IsFinite(const Quad& quad) {
  return std::all_of(quad.begin(), quad.end(), [](const Pixel& p) {
    return std::isfinite(p.u) && std::isfinite(p.v);
  });
}

// Clamps to a range that safely converts to int for images of any realistic
// size.
int ClampToInt(double x, int lo, int hi) {
  if (!(x > lo)) return lo;
  if (!(x < hi)) return hi;
  return static_cast<int>(x);
}

// Smallest column c with c + 0.5 >= x.
int FirstCenterAtOrAfter(double x, int width) {
  int c = ClampToInt(std::ceil(x - 0.5), -1, width);
  while (c > -1 && c - 0.5 >= x) --c;
  while (c < width && c + 0.5 < x) ++c;
  return c;
}

// Largest column c with c + 0.5 < x.
int LastCenterBefore(double x, int width) {
  int c = ClampToInt(std::ceil(x - 0.5) - 1., -1, width);
  while (c < width && c + 1.5 < x) ++c;
  while (c > -1 && c + 0.5 >= x) --c;
  return c;
}

// Largest column c with c + 0.5 <= x.
int LastCenterAtOrBefore(double x, int width) {
  int c = ClampToInt(std::floor(x - 0.5), -1, width);
  while (c < width && c + 1.5 <= x) ++c;
  while (c > -1 && c + 0.5 > x) --c;
  return c;
}

void RasterizeQuad(const Quad& quad, BinaryMask* mask) {
  const int width = mask->width();
  const int height = mask->height();
  double v_min = quad[0].v;
  double v_max = quad[0].v;
  for (const Pixel& p : quad) {
    v_min = std::min(v_min, p.v);
    v_max = std::max(v_max, p.v);
  }
  const int first_row = std::max(0, FirstCenterAtOrAfter(v_min, height));
  const int last_row = std::min(height - 1, LastCenterAtOrBefore(v_max, height));

  for (int row = first_row; row <= last_row; ++row) {
    const double row_center = row + 0.5;

    // Interior: a centre is inside iff an odd number of crossings lie
    // strictly to its right.
    std::array<double, 4> crossings;
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      const Pixel& a = quad[i];
      const Pixel& b = quad[(i + 1) % 4];
      if (Crosses(a, b, row_center)) {
        crossings[n++] = CrossingU(a, b, row_center);
      }
    }
    std::sort(crossings.begin(), crossings.begin() + n);
    for (int i = 0; i + 1 < n; i += 2) {
      mask->FillSpan(row, FirstCenterAtOrAfter(crossings[i], width),
                     LastCenterBefore(crossings[i + 1], width));
    }

    // Boundary.
    for (int i = 0; i < 4; ++i) {
      const Pixel& a = quad[i];
      const Pixel& b = quad[(i + 1) % 4];
      if (row_center < std::min(a.v, b.v) || row_center > std::max(a.v, b.v)) {
        continue;
      }
      if (a.v == b.v) {
        mask->FillSpan(row, FirstCenterAtOrAfter(std::min(a.u, b.u), width),
                       LastCenterAtOrBefore(std::max(a.u, b.u), width));
        continue;
      }
      const double u = CrossingU(a, b, row_center);
      const int center = ClampToInt(std::floor(u - 0.5), -3, width + 3);
      for (int col = std::max(0, center - 2);
           col <= std::min(width - 1, center + 2); ++col) {
        if (OnSegment(a, b, col + 0.5, row_center)) mask->set(col, row);
      }
    }
  }
}

bool WithinGuardBand(const Pixel& p, const CameraModel& camera,
                     double guard_band) {
  const double w = camera.width();
  const double h = camera.height();
  return p.u >= -guard_band * w && p.u <= (1. + guard_band) * w &&
         p.v >= -guard_band * h && p.v <= (1. + guard_band) * h;
}

}  // namespace

ContactCalibration ContactCalibration::FromVehicle(double width,
                                                   double height_below,
                                                   double forward) {
  ContactCalibration contact;
  contact.left = Point3(-0.5 * width, height_below, forward);
  contact.right = Point3(0.5 * width, height_below, forward);
  contact.Validate();
  return contact;
}

void ContactCalibration::Validate() const {
  if (!left.allFinite() || !right.allFinite()) {
    throw ValidationError("contact points must be finite");
  }
  if (!(Track() > 0.)) {
    throw ValidationError("left and right contact points coincide");
  }
}

Lookahead ChooseLookahead(std::span<const RigidTransform> relatives,
                          std::size_t start, const ContactCalibration& contact,
                          double min_distance) {
  if (!(min_distance > 0.)) {
    throw ValidationError("look-ahead distance must be positive");
  }
  if (start > relatives.size()) {
    throw IndexError("frame " + std::to_string(start) + " is beyond the " +
                     std::to_string(relatives.size() + 1) +
                     " frames of the recording");
  }
  Lookahead result;
  RigidTransform chain;
  for (std::size_t k = 1; start + k <= relatives.size(); ++k) {
    chain = chain * relatives[start + k - 1];
    result.frames = k;
    result.distance = (chain * contact.left - contact.left).norm();
    if (result.distance > min_distance) return result;
  }
  result.truncated = true;
  return result;
}

PathPolyline ProjectContacts(const CameraModel& camera,
                             std::span<const RigidTransform> relatives,
                             std::size_t start, std::size_t count,
                             const ContactCalibration& contact,
                             double guard_band) {
  if (start > relatives.size() || count > relatives.size() - start) {
    throw IndexError("contacts for frames [" + std::to_string(start) + ", " +
                     std::to_string(start + count) + "] exceed the recording");
  }
  PathPolyline polyline;
  polyline.left.reserve(count + 1);
  polyline.right.reserve(count + 1);
  const auto add = [&](const RigidTransform& chain) {
    const auto project = [&](const Point3& c, std::vector<Pixel>* pixels,
                             std::vector<bool>* visible) {
      const std::optional<Pixel> p = TryProject(camera, chain * c);
      pixels->push_back(p.value_or(Pixel{}));
      visible->push_back(p.has_value() &&
                         WithinGuardBand(*p, camera, guard_band));
    };
    project(contact.left, &polyline.left, &polyline.left_visible);
    project(contact.right, &polyline.right, &polyline.right_visible);
  };
  RigidTransform chain;
  add(chain);
  for (std::size_t j = 1; j <= count; ++j) {
    chain = chain * relatives[start + j - 1];
    add(chain);
  }
  return polyline;
}

std::vector<Quad> PathQuads(const PathPolyline& polyline) {
  std::vector<Quad> quads;
  for (std::size_t j = 1; j < polyline.size(); ++j) {
    if (!polyline.left_visible[j] || !polyline.left_visible[j - 1] ||
        !polyline.right_visible[j - 1] || !polyline.right_visible[j]) {
      continue;
    }
    quads.push_back({polyline.left[j], polyline.left[j - 1],
                     polyline.right[j - 1], polyline.right[j]});
  }
  return quads;
}

bool QuadContains(const Quad& quad, const Pixel& point) {
  bool inside = false;
  for (int i = 0; i < 4; ++i) {
    const Pixel& a = quad[i];
    const Pixel& b = quad[(i + 1) % 4];
    if (OnSegment(a, b, point.u, point.v)) return true;
    if (Crosses(a, b, point.v) && point.u < CrossingU(a, b, point.v)) {
      inside = !inside;
    }
  }
  return inside;
}

BinaryMask RasterizeQuads(std::span<const Quad> quads, int width, int height) {
  BinaryMask mask(width, height);
  if (width == 0 || height == 0) return mask;
  for (const Quad& quad : quads) {
    if (IsFinite(quad)) RasterizeQuad(quad, &mask);
  }
  return mask;
}

}  // namespace pathlabel
