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

#include "pathlabel/geometry.h"

#include <cmath>
#include <string>

#include "Eigen/Geometry"
#include "pathlabel/error.h"

namespace pathlabel {

RigidTransform::RigidTransform()
    : rotation_(Eigen::Matrix3d::Identity()),
      translation_(Eigen::Vector3d::Zero()) {}

RigidTransform::RigidTransform(const Eigen::Matrix3d& rotation,
                               const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {}

RigidTransform RigidTransform::Translation(const Eigen::Vector3d& translation) {
  return RigidTransform(Eigen::Matrix3d::Identity(), translation);
}

RigidTransform RigidTransform::PureYaw(double yaw) {
  return FromEuler(yaw, 0., 0.);
}

RigidTransform RigidTransform::FromEuler(double yaw, double pitch, double roll,
                                         const Eigen::Vector3d& translation) {
  const Eigen::Matrix3d rotation =
      (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitY()) *
       Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitX()) *
       Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitZ()))
          .toRotationMatrix();
  return RigidTransform(rotation, translation);
}

RigidTransform RigidTransform::FromMatrix34(
    const Eigen::Matrix<double, 3, 4>& m) {
  return RigidTransform(m.leftCols<3>(), m.col(3));
}

Eigen::Matrix4d RigidTransform::ToMatrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Eigen::Matrix<double, 3, 4> RigidTransform::ToMatrix34() const {
  Eigen::Matrix<double, 3, 4> m;
  m << rotation_, translation_;
  return m;
}

RigidTransform RigidTransform::inverse() const {
  const Eigen::Matrix3d rt = rotation_.transpose();
  return RigidTransform(rt, -(rt * translation_));
}

bool RigidTransform::IsValid(double tolerance) const {
  if (!rotation_.allFinite() || !translation_.allFinite()) return false;
  const Eigen::Matrix3d gram = rotation_.transpose() * rotation_;
  if (((gram - Eigen::Matrix3d::Identity()).array().abs() > tolerance).any()) {
    return false;
  }
  return std::abs(rotation_.determinant() - 1.) <= tolerance;
}

RigidTransform RigidTransform::operator*(const RigidTransform& rhs) const {
  return RigidTransform(rotation_ * rhs.rotation_,
                        rotation_ * rhs.translation_ + translation_);
}

Point3 RigidTransform::operator*(const Point3& point) const {
  return rotation_ * point + translation_;
}

Point3 TransformPoint(const RigidTransform& transform, const Point3& point) {
  return transform * point;
}

RigidTransform ComposeChain(std::span<const RigidTransform> relatives,
                            std::size_t start, std::size_t count) {
  if (start > relatives.size() || count > relatives.size() - start) {
    throw IndexError("chain [" + std::to_string(start) + ", " +
                     std::to_string(start + count) + ") exceeds " +
                     std::to_string(relatives.size()) + " relative poses");
  }
  RigidTransform result;
  for (std::size_t i = start; i < start + count; ++i) {
    result = result * relatives[i];
  }
  return result;
}

CameraModel::CameraModel(const Eigen::Matrix<double, 3, 4>& projection,
                         int width, int height)
    : projection_(projection), width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("camera image size must be positive, got " +
                          std::to_string(width) + "x" +
                          std::to_string(height));
  }
  if (!projection.allFinite()) {
    throw ValidationError("camera projection matrix is not finite");
  }
  if (projection(0, 0) <= 0. || projection(1, 1) <= 0.) {
    throw ValidationError("camera focal entries must be strictly positive");
  }
  const double cx = projection(0, 2);
  const double cy = projection(1, 2);
  if (cx < 0. || cx >= width || cy < 0. || cy >= height) {
    throw ValidationError("principal point (" + std::to_string(cx) + ", " +
                          std::to_string(cy) + ") lies outside the image");
  }
}

CameraModel CameraModel::FromIntrinsics(double fx, double fy, double cx,
                                        double cy, int width, int height) {
  Eigen::Matrix<double, 3, 4> projection;
  projection << fx, 0., cx, 0.,  //
      0., fy, cy, 0.,            //
      0., 0., 1., 0.;
  return CameraModel(projection, width, height);
}

std::optional<Pixel> TryProject(const CameraModel& camera,
                                const Point3& point) {
  const Eigen::Vector3d h =
      camera.projection().leftCols<3>() * point + camera.projection().col(3);
  if (!(h.z() > kMinProjectionDepth)) return std::nullopt;
  Pixel pixel{h.x() / h.z(), h.y() / h.z()};
  if (!std::isfinite(pixel.u) || !std::isfinite(pixel.v)) return std::nullopt;
  return pixel;
}

Pixel Project(const CameraModel& camera, const Point3& point) {
  const std::optional<Pixel> pixel = TryProject(camera, point);
  if (!pixel) {
    throw BehindCameraError("point (" + std::to_string(point.x()) + ", " +
                            std::to_string(point.y()) + ", " +
                            std::to_string(point.z()) +
                            ") is behind the camera");
  }
  return *pixel;
}

EulerAngles ToEuler(const Eigen::Matrix3d& r) {
  // Third column of Ry*Rx*Rz is (sy*cp, -sp, cy*cp), second row is
  // (cp*sr, cp*cr, -sp).
  EulerAngles angles;
  const double cos_pitch = std::hypot(r(1, 0), r(1, 1));
  angles.pitch = std::atan2(-r(1, 2), cos_pitch);
  if (cos_pitch > 1e-12) {
    angles.yaw = std::atan2(r(0, 2), r(2, 2));
    angles.roll = std::atan2(r(1, 0), r(1, 1));
  } else {
    angles.roll = 0.;
    angles.yaw = std::atan2(-r(2, 0), r(0, 0));
  }
  return angles;
}

double YawOf(const RigidTransform& transform) {
  return ToEuler(transform.rotation()).yaw;
}

}  // namespace pathlabel
