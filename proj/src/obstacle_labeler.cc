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

#include "pathlabel/obstacle_labeler.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "Eigen/Eigenvalues"
#include "pathlabel/error.h"

namespace pathlabel {

namespace {

constexpr int kRefinementRounds = 3;

std::optional<Plane> PlaneThrough(const Point3& a, const Point3& b,
                                  const Point3& c) {
  const Eigen::Vector3d normal = (b - a).cross(c - a);
  const double norm = normal.norm();
  const double scale = std::max({(b - a).norm(), (c - a).norm(), 1e-300});
  if (!(norm > 1e-12 * scale * scale)) return std::nullopt;
  Plane plane;
  plane.normal = normal / norm;
  plane.offset = -plane.normal.dot(a);
  return plane;
}

std::optional<Plane> LeastSquaresPlane(std::span<const Point3> points,
                                       const Plane& hypothesis,
                                       double max_inlier_cost) {
  const double cap = max_inlier_cost * max_inlier_cost;
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  std::size_t n = 0;
  for (const Point3& p : points) {
    const double r = hypothesis.SignedDistance(p);
    if (r * r < cap) {
      sum += p;
      ++n;
    }
  }
  if (n < 3) return std::nullopt;
  const Eigen::Vector3d centroid = sum / static_cast<double>(n);
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const Point3& p : points) {
    const double r = hypothesis.SignedDistance(p);
    if (r * r < cap) {
      const Eigen::Vector3d d = p - centroid;
      scatter += d * d.transpose();
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(scatter);
  if (solver.info() != Eigen::Success) return std::nullopt;
  // Eigenvalues are sorted in increasing order.
  if (!(solver.eigenvalues()(1) > 0.)) return std::nullopt;
  Plane plane;
  plane.normal = solver.eigenvectors().col(0).normalized();
  plane.offset = -plane.normal.dot(centroid);
  return plane;
}

void Orient(const Eigen::Vector3d& up_hint, Plane* plane) {
  const bool flip = std::abs(plane->offset) > 1e-9
                        ? plane->offset < 0.
                        : plane->normal.dot(up_hint) < 0.;
  if (flip) {
    plane->normal = -plane->normal;
    plane->offset = -plane->offset;
  }
}

}  // namespace

void PointCloud::Validate() const {
  if (!intensity.empty() && intensity.size() != points.size()) {
    throw ValidationError("point cloud has " + std::to_string(points.size()) +
                          " points but " + std::to_string(intensity.size()) +
                          " intensities");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].allFinite()) {
      throw ValidationError("point " + std::to_string(i) + " is not finite");
    }
  }
}

void MlesacParams::Validate() const {
  if (iterations < 1) throw ValidationError("MLESAC needs >= 1 iteration");
  if (!(inlier_sigma > 0.)) {
    throw ValidationError("MLESAC inlier sigma must be positive");
  }
  if (!(max_inlier_cost > 0.)) {
    throw ValidationError("MLESAC max inlier cost must be positive");
  }
}

double MlesacCost(std::span<const Point3> points, const Plane& plane,
                  double max_inlier_cost) {
  const double cap = max_inlier_cost * max_inlier_cost;
  double cost = 0.;
  for (const Point3& p : points) {
    const double r = plane.SignedDistance(p);
    cost += std::min(r * r, cap);
  }
  return cost;
}

Plane FitGroundPlane(const PointCloud& cloud, const MlesacParams& params,
                     std::vector<double>* candidate_costs) {
  params.Validate();
  const std::span<const Point3> points = cloud.points;
  if (points.size() < 3) {
    throw EstimationFailedError("ground plane needs >= 3 points, got " +
                                std::to_string(points.size()));
  }

  std::mt19937_64 rng(params.random_seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  std::optional<Plane> best;
  double best_cost = 0.;
  for (int iteration = 0; iteration < params.iterations; ++iteration) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    std::size_t k = pick(rng);
    if (i == j || j == k || i == k) continue;
    const std::optional<Plane> candidate =
        PlaneThrough(points[i], points[j], points[k]);
    if (!candidate) continue;
    const double cost = MlesacCost(points, *candidate, params.max_inlier_cost);
    if (candidate_costs != nullptr) candidate_costs->push_back(cost);
    if (!best || cost < best_cost) {
      best = candidate;
      best_cost = cost;
    }
  }
  if (!best) {
    throw EstimationFailedError("all " + std::to_string(params.iterations) +
                                " minimal samples were degenerate");
  }

  for (int round = 0; round < kRefinementRounds; ++round) {
    const std::optional<Plane> refined =
        LeastSquaresPlane(points, *best, params.max_inlier_cost);
    if (!refined) break;
    const double cost = MlesacCost(points, *refined, params.max_inlier_cost);
    if (!(cost <= best_cost)) break;
    const bool converged = cost == best_cost;
    best = refined;
    best_cost = cost;
    if (converged) break;
  }

  Orient(params.up_hint, &*best);
  return *best;
}

PointCloud FilterObstaclePoints(const PointCloud& cloud, const Plane& plane,
                                double height_threshold) {
  if (!(height_threshold >= 0.)) {
    throw ValidationError("obstacle height threshold must be >= 0");
  }
  PointCloud result;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (plane.SignedDistance(cloud.points[i]) > height_threshold) {
      result.points.push_back(cloud.points[i]);
      if (cloud.has_intensity()) result.intensity.push_back(cloud.intensity[i]);
    }
  }
  return result;
}

PointCloud CropToGroundRegion(const PointCloud& cloud,
                              const GroundRegion& region) {
  PointCloud result;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Point3& p = cloud.points[i];
    if (p.x() >= 0. && p.x() <= region.forward &&
        std::abs(p.y()) <= region.lateral) {
      result.points.push_back(p);
      if (cloud.has_intensity()) result.intensity.push_back(cloud.intensity[i]);
    }
  }
  return result;
}

std::vector<Pixel> ProjectObstacles(const CameraModel& camera,
                                    const RigidTransform& camera_from_sensor,
                                    const PointCloud& obstacles) {
  std::vector<Pixel> pixels;
  pixels.reserve(obstacles.size());
  for (const Point3& p : obstacles.points) {
    const std::optional<Pixel> pixel =
        TryProject(camera, camera_from_sensor * p);
    if (pixel && camera.Contains(*pixel)) pixels.push_back(*pixel);
  }
  return pixels;
}

BinaryMask StixelFill(std::span<const Pixel> pixels, int width, int height) {
  BinaryMask mask(width, height);
  // Lowest (largest) row reached in each column, -1 when untouched.
  std::vector<int> bottom(width, -1);
  for (const Pixel& p : pixels) {
    if (!(p.u >= 0. && p.u < width && p.v >= 0.)) continue;
    const int col = static_cast<int>(std::floor(p.u));
    const int row = p.v >= height ? height - 1
                                  : static_cast<int>(std::floor(p.v));
    bottom[col] = std::max(bottom[col], row);
  }
  for (int col = 0; col < width; ++col) {
    for (int row = 0; row <= bottom[col]; ++row) mask.set(col, row);
  }
  return mask;
}

}  // namespace pathlabel
