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

#ifndef PATHLABEL_GEOMETRY_H_
#define PATHLABEL_GEOMETRY_H_

#include <cstddef>
#include <optional>
#include <span>

#include "Eigen/Core"

namespace pathlabel {

// A point in metres, expressed in a camera or sensor frame.
using Point3 = Eigen::Vector3d;

// Real-valued image coordinates. `u` grows to the right, `v` grows downwards
// and row 0 is the top of the image.
struct Pixel {
  double u = 0.;
  double v = 0.;
};

// Element of SE(3). A transform G_AB maps coordinates expressed in frame B
// into frame A: x_A = R * x_B + t.
//
// Odometry chains follow the same convention: relatives[i] is G_{C_i C_{i+1}}
// and maps points in the camera frame of frame i+1 into the camera frame of
// frame i.
class RigidTransform {
 public:
  // Identity.
  RigidTransform();
  // The rotation is stored as given. Use IsValid() to check orthonormality.
  RigidTransform(const Eigen::Matrix3d& rotation,
                 const Eigen::Vector3d& translation);

  static RigidTransform Identity() { return RigidTransform(); }
  static RigidTransform Translation(const Eigen::Vector3d& translation);
  // Rotation by `yaw` radians about the camera's vertical axis. See YawOf().
  static RigidTransform PureYaw(double yaw);
  // Builds R = Ry(yaw) * Rx(pitch) * Rz(roll) in camera axes (x right, y
  // down, z forward).
  static RigidTransform FromEuler(double yaw, double pitch, double roll,
                                  const Eigen::Vector3d& translation =
                                      Eigen::Vector3d::Zero());
  // Row-major [R|t].
  static RigidTransform FromMatrix34(const Eigen::Matrix<double, 3, 4>& m);

  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }

  Eigen::Matrix4d ToMatrix() const;
  Eigen::Matrix<double, 3, 4> ToMatrix34() const;

  RigidTransform inverse() const;

  // RᵀR = I and det(R) = +1, element-wise within `tolerance`.
  bool IsValid(double tolerance = 1e-9) const;

  RigidTransform operator*(const RigidTransform& rhs) const;
  Point3 operator*(const Point3& point) const;

 private:
  Eigen::Matrix3d rotation_;
  Eigen::Vector3d translation_;
};

Point3 TransformPoint(const RigidTransform& transform, const Point3& point);

// G_{C_t C_{t+k}} = relatives[t] * relatives[t+1] * ... * relatives[t+k-1].
// count == 0 yields the identity. Throws IndexError if start + count exceeds
// relatives.size().
RigidTransform ComposeChain(std::span<const RigidTransform> relatives,
                            std::size_t start, std::size_t count);

// Pinhole camera with a 3x4 projection matrix acting on homogeneous points of
// the (rectified) camera frame.
class CameraModel {
 public:
  // Throws ValidationError if the focal entries are not strictly positive,
  // the principal point is outside the image or the size is not positive.
  CameraModel(const Eigen::Matrix<double, 3, 4>& projection, int width,
              int height);

  static CameraModel FromIntrinsics(double fx, double fy, double cx, double cy,
                                    int width, int height);

  const Eigen::Matrix<double, 3, 4>& projection() const { return projection_; }
  int width() const { return width_; }
  int height() const { return height_; }

  bool Contains(const Pixel& pixel) const {
    return pixel.u >= 0. && pixel.v >= 0. && pixel.u < width_ &&
           pixel.v < height_;
  }

 private:
  Eigen::Matrix<double, 3, 4> projection_;
  int width_;
  int height_;
};

// Points whose projected depth is at or below this are treated as behind the
// camera.
inline constexpr double kMinProjectionDepth = 1e-6;

// Returns std::nullopt for points behind (or too close to) the camera.
std::optional<Pixel> TryProject(const CameraModel& camera, const Point3& point);

// Throws BehindCameraError when TryProject() would return std::nullopt.
Pixel Project(const CameraModel& camera, const Point3& point);

struct EulerAngles {
  double yaw = 0.;
  double pitch = 0.;
  double roll = 0.;
};

// Decomposes R = Ry(yaw) * Rx(pitch) * Rz(roll), the yaw-pitch-roll sequence
// for camera axes: yaw turns about the vertical (y) axis, pitch about the
// lateral (x) axis and roll about the optical (z) axis. A positive yaw turns
// the optical axis towards +x, i.e. to the right in the image.
//
// At gimbal lock (|pitch| = pi/2) the roll is fixed to zero and the full
// remaining rotation is attributed to yaw.
EulerAngles ToEuler(const Eigen::Matrix3d& rotation);

double YawOf(const RigidTransform& transform);

}  // namespace pathlabel

#endif  // PATHLABEL_GEOMETRY_H_
