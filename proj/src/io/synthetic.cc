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

#include "pathlabel/io/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pathlabel/error.h"
#include "pathlabel/io/boxes_io.h"
#include "pathlabel/io/cloud_io.h"
#include "pathlabel/io/label_io.h"
#include "pathlabel/io/manifest.h"
#include "pathlabel/io/pose_io.h"
#include "pathlabel/io/text.h"

namespace pathlabel::io {

namespace {

namespace fs = std::filesystem;

constexpr double kEpsilon = 1e-9;

Eigen::Matrix3d Yaw(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d r;
  r << c, 0., s, 0., 1., 0., -s, 0., c;
  return r;
}

struct Pose {
  double heading = 0.;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();

  RigidTransform Transform() const {
    return RigidTransform(Yaw(heading), position);
  }
};

// Pose after travelling `distance` metres into a segment that starts at
// `start`. Every frame of an arc segment rotates about the same centre.
Pose Advance(const Pose& start, const TrajectorySegment& segment,
             double distance) {
  Pose pose;
  if (segment.yaw_rate == 0.) {
    pose.heading = start.heading;
    pose.position =
        start.position + distance * (Yaw(start.heading) * Eigen::Vector3d::UnitZ());
    return pose;
  }
  const double angle = segment.speed > 0.
                           ? segment.yaw_rate * distance / segment.speed
                           : 0.;
  const double radius = segment.speed / segment.yaw_rate;
  const Eigen::Vector3d centre =
      start.position + Yaw(start.heading) * Eigen::Vector3d(radius, 0., 0.);
  pose.heading = start.heading + angle;
  pose.position = centre + Yaw(angle) * (start.position - centre);
  return pose;
}

std::vector<Pose> Trajectory(const SyntheticScene& scene) {
  std::vector<Pose> poses(1);
  for (const TrajectorySegment& segment : scene.segments) {
    const Pose start = poses.back();
    for (std::size_t n = 1; n <= segment.frames; ++n) {
      poses.push_back(Advance(start, segment, n * segment.speed));
    }
  }
  return poses;
}

// The segment of every frame interval.
std::vector<TrajectorySegment> Intervals(const SyntheticScene& scene) {
  std::vector<TrajectorySegment> intervals;
  for (const TrajectorySegment& segment : scene.segments) {
    for (std::size_t n = 0; n < segment.frames; ++n) {
      intervals.push_back({1, segment.speed, segment.yaw_rate});
    }
  }
  return intervals;
}

Pose PoseAtDistance(const SyntheticScene& scene, double distance) {
  Pose start;
  double travelled = 0.;
  for (const TrajectorySegment& segment : scene.segments) {
    const double length = segment.frames * segment.speed;
    if (distance <= travelled + length) {
      return Advance(start, segment, distance - travelled);
    }
    start = Advance(start, segment, length);
    travelled += length;
  }
  return start;
}

// Footprint corners (counter-clockwise seen from above) at ground level in
// the world frame.
std::array<Eigen::Vector3d, 4> Footprint(const SyntheticScene& scene,
                                         const BoxObstacle& box) {
  const Pose pose = PoseAtDistance(scene, box.distance);
  const Eigen::Matrix3d r = Yaw(pose.heading);
  const Eigen::Vector3d forward = r * Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d right = r * Eigen::Vector3d::UnitX();
  const Eigen::Vector3d centre = pose.position + box.lateral * right +
                                 scene.camera_height * Eigen::Vector3d::UnitY();
  const double hl = box.length / 2.;
  const double hw = box.width / 2.;
  return {centre - hl * forward - hw * right, centre - hl * forward + hw * right,
          centre + hl * forward + hw * right, centre + hl * forward - hw * right};
}

struct Pt {
  double u;
  double v;
};

// Andrew's monotone chain; returns the hull counter-clockwise in (u, v).
std::vector<Pt> ConvexHull(std::vector<Pt> points) {
  std::sort(points.begin(), points.end(), [](const Pt& a, const Pt& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  if (points.size() < 3) return points;
  const auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
  };
  std::vector<Pt> hull(2 * points.size());
  std::size_t k = 0;
  for (const Pt& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Keeps the part of `polygon` with sign * (u - bound) >= 0.
std::vector<Pt> ClipU(const std::vector<Pt>& polygon, double bound,
                      double sign) {
  std::vector<Pt> out;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Pt& a = polygon[i];
    const Pt& b = polygon[(i + 1) % polygon.size()];
    const double da = sign * (a.u - bound);
    const double db = sign * (b.u - bound);
    if (da >= 0.) out.push_back(a);
    if ((da >= 0.) != (db >= 0.)) {
      const double s = da / (da - db);
      out.push_back({bound, a.v + s * (b.v - a.v)});
    }
  }
  return out;
}

// Projected silhouette of the part of `box` between heights `bottom` and
// `top`, or std::nullopt if it lies behind the camera of `camera_pose`.
std::optional<std::vector<Pt>> Silhouette(const SyntheticScene& scene,
                                          const BoxObstacle& box,
                                          const RigidTransform& camera_pose,
                                          double bottom, double top) {
  const RigidTransform camera_from_world = camera_pose.inverse();
  std::vector<Pt> projected;
  int in_front = 0;
  int behind = 0;
  for (const Eigen::Vector3d& corner : Footprint(scene, box)) {
    for (const double height : {bottom, top}) {
      const Eigen::Vector3d p =
          camera_from_world * (corner - height * Eigen::Vector3d::UnitY());
      if (p.z() > kMinProjectionDepth) {
        ++in_front;
        projected.push_back(
            {scene.fx * p.x() / p.z() + scene.cx, scene.fy * p.y() / p.z() + scene.cy});
      } else {
        ++behind;
      }
    }
  }
  if (in_front == 0) return std::nullopt;
  if (behind > 0) {
    throw ValidationError("box at " + std::to_string(box.distance) +
                          " m straddles the image plane of a label frame");
  }
  return ConvexHull(std::move(projected));
}

// Closed-form look-ahead: smallest k whose left contact displacement exceeds
// the distance, else the rest of the recording.
std::size_t AnalyticLookahead(const SyntheticScene& scene,
                              const std::vector<Pose>& poses, std::size_t t,
                              bool* truncated) {
  const Eigen::Vector3d contact(-scene.vehicle_width / 2., scene.camera_height,
                                scene.contact_forward);
  const Eigen::Matrix3d back = Yaw(-poses[t].heading);
  for (std::size_t k = 1; t + k < poses.size(); ++k) {
    const Pose& p = poses[t + k];
    const Eigen::Vector3d moved =
        back * (Yaw(p.heading) * contact + p.position - poses[t].position);
    if ((moved - contact).norm() > scene.lookahead_distance) {
      *truncated = false;
      return k;
    }
  }
  *truncated = true;
  return poses.size() - 1 - t;
}

// Is the ground point q (camera frame at the start of the interval) swept by
// the contact segment during the interval?
bool SweptByInterval(const SyntheticScene& scene,
                     const TrajectorySegment& interval, double qx, double qz) {
  const double half = scene.vehicle_width / 2.;
  const double f = scene.contact_forward;
  if (interval.yaw_rate == 0.) {
    return std::abs(qx) <= half + kEpsilon && qz >= f - kEpsilon &&
           qz <= f + interval.speed + kEpsilon;
  }
  // Contacts rotate about (radius, 0) by angles in [0, yaw_rate]. Relative to
  // the centre the segment is {(x, f) : x in [lo, hi]}.
  const double radius = interval.speed / interval.yaw_rate;
  const double lo = -half - radius;
  const double hi = half - radius;
  const double x = qx - radius;
  const double z = qz;
  const double rho = std::hypot(x, z);
  const double near_x = (lo <= 0. && hi >= 0.) ? 0.
                                              : std::min(std::abs(lo), std::abs(hi));
  const double far_x = std::max(std::abs(lo), std::abs(hi));
  if (rho < std::hypot(near_x, f) - kEpsilon ||
      rho > std::hypot(far_x, f) + kEpsilon) {
    return false;
  }
  // Undo a rotation by alpha: z' = rho * sin(alpha + phi) must equal f.
  const double phi = std::atan2(z, x);
  const double s = std::clamp(f / rho, -1., 1.);
  const double base = std::asin(s);
  const double lower = std::min(0., interval.yaw_rate) - kEpsilon;
  const double upper = std::max(0., interval.yaw_rate) + kEpsilon;
  for (const double target : {base, std::numbers::pi - base}) {
    double alpha = std::remainder(target - phi, 2. * std::numbers::pi);
    if (alpha < lower || alpha > upper) continue;
    const double xr = x * std::cos(alpha) - z * std::sin(alpha);
    if (xr >= lo - kEpsilon && xr <= hi + kEpsilon) return true;
  }
  return false;
}

BinaryMask AnalyticPath(const SyntheticScene& scene,
                        const std::vector<Pose>& poses,
                        const std::vector<TrajectorySegment>& intervals,
                        std::size_t t, std::size_t k, const CropSpec& crop) {
  BinaryMask path(scene.image_width, scene.image_height);
  // Frame t coordinates -> frame j coordinates.
  struct Local {
    Eigen::Matrix3d rotation;
    Eigen::Vector3d translation;
    TrajectorySegment interval;
  };
  std::vector<Local> locals;
  for (std::size_t j = t; j < t + k; ++j) {
    const Eigen::Matrix3d rj_t = Yaw(poses[t].heading - poses[j].heading);
    const Eigen::Vector3d tj =
        Yaw(-poses[j].heading) * (poses[t].position - poses[j].position);
    locals.push_back({rj_t, tj, intervals[j]});
  }
  for (int row = crop.top_rows; row < scene.image_height - crop.bottom_rows;
       ++row) {
    const double dy = (row + 0.5 - scene.cy) / scene.fy;
    if (dy <= 0.) continue;
    for (int col = 0; col < scene.image_width; ++col) {
      const double dx = (col + 0.5 - scene.cx) / scene.fx;
      const Eigen::Vector3d ground =
          Eigen::Vector3d(dx, dy, 1.) * (scene.camera_height / dy);
      for (const Local& local : locals) {
        const Eigen::Vector3d q = local.rotation * ground + local.translation;
        if (SweptByInterval(scene, local.interval, q.x(), q.z())) {
          path.set(col, row);
          break;
        }
      }
    }
  }
  return path;
}

BinaryMask AnalyticObstacles(const SyntheticScene& scene,
                             const RigidTransform& camera_pose) {
  BinaryMask obstacle(scene.image_width, scene.image_height);
  for (const BoxObstacle& box : scene.boxes) {
    const std::optional<std::vector<Pt>> hull =
        Silhouette(scene, box, camera_pose, scene.obstacle_height, box.height);
    if (!hull) continue;
    for (int col = 0; col < scene.image_width; ++col) {
      const std::vector<Pt> strip =
          ClipU(ClipU(*hull, col, 1.), col + 1., -1.);
      if (strip.empty()) continue;
      double bottom = -1.;
      for (const Pt& p : strip) bottom = std::max(bottom, p.v);
      if (bottom < 0.) continue;
      const int last =
          std::min(static_cast<int>(std::floor(bottom)), scene.image_height - 1);
      for (int row = 0; row <= last; ++row) obstacle.set(col, row);
    }
  }
  return obstacle;
}

PointCloud RenderCloud(const SyntheticScene& scene, const Pose& pose,
                       std::size_t frame) {
  std::mt19937_64 rng(FrameSeed(scene.seed, frame));
  std::normal_distribution<double> noise(0., scene.noise_sigma);
  std::uniform_real_distribution<double> unit(0., 1.);
  PointCloud cloud;

  const double sensor_height = scene.camera_height - scene.sensor_offset.y();
  for (double x = -scene.ground_backward; x <= scene.ground_forward + kEpsilon;
       x += scene.ground_spacing) {
    for (double y = -scene.ground_lateral; y <= scene.ground_lateral + kEpsilon;
         y += scene.ground_spacing) {
      double z = -sensor_height;
      if (scene.outlier_fraction > 0. && unit(rng) < scene.outlier_fraction) {
        z += -1. + unit(rng) * (1. + 0.5 * scene.obstacle_height);
      }
      cloud.points.emplace_back(x, y, z);
      cloud.intensity.push_back(0.5f);
    }
  }

  const RigidTransform sensor_from_world =
      (pose.Transform() * scene.CameraFromSensor()).inverse();
  for (const BoxObstacle& box : scene.boxes) {
    std::vector<double> heights;
    const int levels =
        std::max(2, static_cast<int>(std::ceil(box.height / scene.obstacle_spacing)) + 1);
    for (int i = 0; i < levels; ++i) {
      heights.push_back(box.height * i / (levels - 1));
    }
    if (scene.obstacle_height < box.height) {
      heights.push_back(scene.obstacle_height + 1e-4);
    }
    const std::array<Eigen::Vector3d, 4> corners = Footprint(scene, box);
    for (int e = 0; e < 4; ++e) {
      const Eigen::Vector3d& a = corners[e];
      const Eigen::Vector3d& b = corners[(e + 1) % 4];
      const int steps = std::max(
          1, static_cast<int>(std::ceil((b - a).norm() / scene.obstacle_spacing)));
      // The far corner is the next edge's first sample.
      for (int i = 0; i < steps; ++i) {
        const Eigen::Vector3d base = a + (b - a) * (static_cast<double>(i) / steps);
        for (const double h : heights) {
          cloud.points.push_back(sensor_from_world *
                                 (base - h * Eigen::Vector3d::UnitY()));
          cloud.intensity.push_back(1.f);
        }
      }
    }
  }

  if (scene.noise_sigma > 0.) {
    for (Point3& p : cloud.points) {
      p += Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
    }
  }
  return cloud;
}

std::vector<BoundingBox> ImageBoxes(const SyntheticScene& scene,
                                    const RigidTransform& camera_pose) {
  std::vector<BoundingBox> boxes;
  for (const BoxObstacle& box : scene.boxes) {
    const std::optional<std::vector<Pt>> hull =
        Silhouette(scene, box, camera_pose, 0., box.height);
    if (!hull) continue;
    BoundingBox b{1e300, 1e300, -1e300, -1e300, ObjectGroup::kVehicle};
    for (const Pt& p : *hull) {
      b.min_u = std::min(b.min_u, p.u);
      b.min_v = std::min(b.min_v, p.v);
      b.max_u = std::max(b.max_u, p.u);
      b.max_v = std::max(b.max_v, p.v);
    }
    b.min_u = std::max(b.min_u, 0.);
    b.min_v = std::max(b.min_v, 0.);
    b.max_u = std::min(b.max_u, static_cast<double>(scene.image_width));
    b.max_v = std::min(b.max_v, static_cast<double>(scene.image_height));
    if (b.min_u < b.max_u && b.min_v < b.max_v) boxes.push_back(b);
  }
  return boxes;
}

// A flat-shaded picture of the scene so that overlays have a backdrop.
RgbImage RenderImage(const SyntheticScene& scene,
                     const RigidTransform& camera_pose) {
  RgbImage image(scene.image_width, scene.image_height);
  for (int row = 0; row < scene.image_height; ++row) {
    const bool sky = row + 0.5 <= scene.cy;
    for (int col = 0; col < scene.image_width; ++col) {
      std::uint8_t* px =
          &image.pixels[(static_cast<std::size_t>(row) * image.width + col) * 3];
      px[0] = sky ? 170 : 105;
      px[1] = sky ? 200 : 105;
      px[2] = sky ? 230 : 100;
    }
  }
  std::vector<std::pair<double, const BoxObstacle*>> order;
  const RigidTransform camera_from_world = camera_pose.inverse();
  for (const BoxObstacle& box : scene.boxes) {
    const Eigen::Vector3d centre =
        camera_from_world * (Footprint(scene, box)[0]);
    order.emplace_back(centre.z(), &box);
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [depth, box] : order) {
    const std::optional<std::vector<Pt>> hull =
        Silhouette(scene, *box, camera_pose, 0., box->height);
    if (!hull) continue;
    for (int col = 0; col < scene.image_width; ++col) {
      const std::vector<Pt> strip =
          ClipU(ClipU(*hull, col + 0.5, 1.), col + 0.5, -1.);
      if (strip.empty()) continue;
      double top = 1e300;
      double bottom = -1e300;
      for (const Pt& p : strip) {
        top = std::min(top, p.v);
        bottom = std::max(bottom, p.v);
      }
      const int first = std::max(0, static_cast<int>(std::ceil(top - 0.5)));
      const int last = std::min(scene.image_height - 1,
                                static_cast<int>(std::floor(bottom - 0.5)));
      for (int row = first; row <= last; ++row) {
        std::uint8_t* px =
            &image.pixels[(static_cast<std::size_t>(row) * image.width + col) * 3];
        px[0] = 60;
        px[1] = 70;
        px[2] = 150;
      }
    }
  }
  return image;
}

std::vector<std::string> Split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::string current;
  for (const char c : text) {
    if (c == separator) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  std::vector<std::string> trimmed;
  for (const std::string& p : parts) {
    const std::vector<std::string_view> tokens = SplitWhitespace(p);
    if (!tokens.empty()) trimmed.push_back(p);
  }
  return trimmed;
}

}  // namespace

const std::vector<std::string_view>& SyntheticScene::Keys() {
  static const std::vector<std::string_view> keys = {
      "seed",           "frame_rate",       "segments",
      "boxes",          "image_width",      "image_height",
      "fx",             "fy",               "cx",
      "cy",             "camera_height",    "vehicle_width",
      "contact_forward", "sensor_offset",   "noise_sigma",
      "outlier_fraction", "ground_spacing", "ground_forward",
      "ground_backward", "ground_lateral",  "obstacle_spacing",
      "obstacle_height", "lookahead_distance", "crop_top_fraction",
      "crop_bottom_fraction", "label_frames"};
  return keys;
}

SyntheticScene SyntheticScene::FromConfig(const KeyValueConfig& config) {
  config.RejectUnknown(Keys());
  const std::string& origin = config.origin();
  SyntheticScene scene;
  scene.seed = static_cast<std::uint64_t>(config.GetInt("seed", 0));
  scene.frame_rate = config.GetDouble("frame_rate", scene.frame_rate);
  for (const std::string& item : Split(config.GetString("segments", ""), ',')) {
    const std::vector<std::string> fields = Split(item, ':');
    const std::string where = origin + ": segment '" + item + "'";
    if (fields.size() != 3) {
      throw ParseError(where + ": expected frames:speed:yaw_rate");
    }
    const std::int64_t frames =
        ParseInt(SplitWhitespace(fields[0]).at(0), where);
    if (frames < 0) throw ParseError(where + ": negative frame count");
    scene.segments.push_back({static_cast<std::size_t>(frames),
                              ParseDouble(SplitWhitespace(fields[1]).at(0), where),
                              ParseDouble(SplitWhitespace(fields[2]).at(0), where)});
  }
  for (const std::string& item : Split(config.GetString("boxes", ""), ';')) {
    const std::vector<std::string_view> fields = SplitWhitespace(item);
    const std::string where = origin + ": box '" + item + "'";
    if (fields.size() != 5) {
      throw ParseError(where +
                       ": expected distance lateral length width height");
    }
    scene.boxes.push_back(
        {ParseDouble(fields[0], where), ParseDouble(fields[1], where),
         ParseDouble(fields[2], where), ParseDouble(fields[3], where),
         ParseDouble(fields[4], where)});
  }
  scene.image_width = static_cast<int>(config.GetInt("image_width", scene.image_width));
  scene.image_height =
      static_cast<int>(config.GetInt("image_height", scene.image_height));
  scene.fx = config.GetDouble("fx", scene.fx);
  scene.fy = config.GetDouble("fy", scene.fy);
  scene.cx = config.GetDouble("cx", scene.cx);
  scene.cy = config.GetDouble("cy", scene.cy);
  scene.camera_height = config.GetDouble("camera_height", scene.camera_height);
  scene.vehicle_width = config.GetDouble("vehicle_width", scene.vehicle_width);
  scene.contact_forward =
      config.GetDouble("contact_forward", scene.contact_forward);
  if (config.Has("sensor_offset")) {
    const std::vector<double> offset = config.GetDoubles("sensor_offset");
    if (offset.size() != 3) {
      throw ParseError(origin + ": sensor_offset needs three values");
    }
    scene.sensor_offset = Eigen::Vector3d(offset[0], offset[1], offset[2]);
  }
  scene.noise_sigma = config.GetDouble("noise_sigma", scene.noise_sigma);
  scene.outlier_fraction =
      config.GetDouble("outlier_fraction", scene.outlier_fraction);
  scene.ground_spacing = config.GetDouble("ground_spacing", scene.ground_spacing);
  scene.ground_forward = config.GetDouble("ground_forward", scene.ground_forward);
  scene.ground_backward =
      config.GetDouble("ground_backward", scene.ground_backward);
  scene.ground_lateral = config.GetDouble("ground_lateral", scene.ground_lateral);
  scene.obstacle_spacing =
      config.GetDouble("obstacle_spacing", scene.obstacle_spacing);
  scene.obstacle_height =
      config.GetDouble("obstacle_height", scene.obstacle_height);
  scene.lookahead_distance =
      config.GetDouble("lookahead_distance", scene.lookahead_distance);
  scene.crop_top_fraction =
      config.GetDouble("crop_top_fraction", scene.crop_top_fraction);
  scene.crop_bottom_fraction =
      config.GetDouble("crop_bottom_fraction", scene.crop_bottom_fraction);
  if (config.Has("label_frames")) {
    scene.label_frames = ParseIndexList(config.GetString("label_frames"),
                                        origin + ": label_frames");
  }
  scene.Validate();
  return scene;
}

SyntheticScene SyntheticScene::Load(const fs::path& path) {
  return FromConfig(KeyValueConfig::Load(path));
}

void SyntheticScene::Validate() const {
  const auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ValidationError("synthetic scene: " + message);
  };
  require(!segments.empty(), "no trajectory segments");
  for (const TrajectorySegment& s : segments) {
    require(std::isfinite(s.speed) && s.speed >= 0.,
            "segment speeds must be finite and non-negative");
    require(std::isfinite(s.yaw_rate) && std::abs(s.yaw_rate) < std::numbers::pi,
            "segment yaw rates must be finite and below pi per frame");
    if (s.yaw_rate != 0. && s.frames > 0) {
      require(s.speed > 0., "turning on the spot is not supported");
      require(s.speed / std::abs(s.yaw_rate) > vehicle_width / 2.,
              "turn radius must exceed half the vehicle width");
    }
  }
  require(frame_count() > 1 && TrajectoryLength() > 0.,
          "zero-length trajectory");
  require(frame_rate > 0., "frame_rate must be positive");
  require(camera_height > 0. && vehicle_width > 0.,
          "camera height and vehicle width must be positive");
  require(ground_spacing > 0. && obstacle_spacing > 0.,
          "sample spacings must be positive");
  require(ground_forward > 0. && ground_lateral > 0. && ground_backward >= 0.,
          "ground extents must be positive");
  require(noise_sigma >= 0. && std::isfinite(noise_sigma),
          "noise_sigma must be non-negative");
  require(outlier_fraction >= 0. && outlier_fraction < 1.,
          "outlier_fraction must lie in [0, 1)");
  require(obstacle_height >= 0., "obstacle_height must be non-negative");
  require(lookahead_distance > 0., "lookahead_distance must be positive");
  for (const BoxObstacle& b : boxes) {
    require(b.length > 0. && b.width > 0. && b.height > 0.,
            "box extents must be positive");
    require(b.distance >= 0. && b.distance <= TrajectoryLength(),
            "boxes must stand along the driven path");
  }
  for (const std::size_t f : label_frames) {
    require(f < frame_count(), "label frame " + std::to_string(f) +
                                   " is past the end of the trajectory");
  }
  Camera();
  Crop();
}

std::size_t SyntheticScene::frame_count() const {
  std::size_t n = 1;
  for (const TrajectorySegment& s : segments) n += s.frames;
  return n;
}

double SyntheticScene::TrajectoryLength() const {
  double length = 0.;
  for (const TrajectorySegment& s : segments) length += s.frames * s.speed;
  return length;
}

CameraModel SyntheticScene::Camera() const {
  return CameraModel::FromIntrinsics(fx, fy, cx, cy, image_width, image_height);
}

RigidTransform SyntheticScene::CameraFromSensor() const {
  Eigen::Matrix3d r;
  r << 0., -1., 0., 0., 0., -1., 1., 0., 0.;
  return RigidTransform(r, sensor_offset);
}

ContactCalibration SyntheticScene::Contact() const {
  return ContactCalibration::FromVehicle(vehicle_width, camera_height,
                                         contact_forward);
}

CropSpec SyntheticScene::Crop() const {
  return CropSpec::FromFractions(image_height, crop_top_fraction,
                                 crop_bottom_fraction);
}

PipelineConfig SyntheticScene::Pipeline() const {
  PipelineConfig config;
  config.vehicle_width = vehicle_width;
  config.contact_height = camera_height;
  config.contact_forward = contact_forward;
  config.crop_top_fraction = crop_top_fraction;
  config.crop_bottom_fraction = crop_bottom_fraction;
  config.labeling.lookahead_distance = lookahead_distance;
  config.labeling.obstacle_height = obstacle_height;
  config.labeling.mlesac.random_seed = seed;
  config.labeling.sensor_mode = SensorMode::kRawCloud;
  return config;
}

LabelMask AnalyticLabel(const SyntheticScene& scene, std::size_t t,
                        std::size_t* lookahead, bool* truncated) {
  scene.Validate();
  if (t >= scene.frame_count()) {
    throw IndexError("frame " + std::to_string(t) + " is past the end");
  }
  const std::vector<Pose> poses = Trajectory(scene);
  const std::vector<TrajectorySegment> intervals = Intervals(scene);
  bool cut = false;
  const std::size_t k = AnalyticLookahead(scene, poses, t, &cut);
  if (lookahead != nullptr) *lookahead = k;
  if (truncated != nullptr) *truncated = cut;
  const CropSpec crop = scene.Crop();
  const BinaryMask path = AnalyticPath(scene, poses, intervals, t, k, crop);
  const BinaryMask obstacle = AnalyticObstacles(scene, poses[t].Transform());
  return Compose(path, obstacle, crop);
}

SyntheticData GenerateSynthetic(const SyntheticScene& scene) {
  scene.Validate();
  const std::vector<Pose> poses = Trajectory(scene);
  SyntheticData data;
  for (std::size_t i = 0; i < poses.size(); ++i) {
    data.absolute.push_back(poses[i].Transform());
    data.timestamps.push_back(static_cast<double>(i) / scene.frame_rate);
  }
  for (const TrajectorySegment& interval : Intervals(scene)) {
    Eigen::Vector3d translation(0., 0., interval.speed);
    if (interval.yaw_rate != 0.) {
      const Eigen::Vector3d centre(interval.speed / interval.yaw_rate, 0., 0.);
      translation = centre - Yaw(interval.yaw_rate) * centre;
    }
    data.relatives.emplace_back(Yaw(interval.yaw_rate), translation);
  }
  for (const std::size_t t : scene.label_frames) {
    SyntheticFrame frame;
    frame.index = t;
    frame.truth = AnalyticLabel(scene, t, &frame.lookahead, &frame.truncated);
    frame.cloud = RenderCloud(scene, poses[t], t);
    frame.boxes = ImageBoxes(scene, poses[t].Transform());
    data.frames.push_back(std::move(frame));
  }
  return data;
}

void WriteSynthetic(const SyntheticScene& scene, const SyntheticData& data,
                    const fs::path& out) {
  fs::create_directories(out / "clouds");
  fs::create_directories(out / "images");
  fs::create_directories(out / "truth");

  const Eigen::Matrix<double, 3, 4> projection = scene.Camera().projection();
  const Eigen::Matrix<double, 3, 4> extrinsic =
      scene.CameraFromSensor().ToMatrix34();
  std::string calib;
  for (const auto& [key, m] :
       {std::pair{"P2", projection}, std::pair{"Tr", extrinsic}}) {
    calib += key;
    calib += ":";
    for (int i = 0; i < 12; ++i) calib += " " + FormatDouble(m(i / 4, i % 4));
    calib += "\n";
  }
  WriteTextFile(out / "calib.txt", calib);
  WritePoses(out / "poses.txt", data.relatives);
  WriteTimestamps(out / "times.txt", data.timestamps);
  WriteTextFile(out / "vehicle.cfg", scene.Pipeline().Dump());

  BoxTable boxes;
  std::string frames;
  for (const SyntheticFrame& frame : data.frames) {
    const std::string name = FrameName(frame.index);
    WriteCloud(out / "clouds" / (name + ".bin"), frame.cloud);
    WriteRgbPng(out / "images" / (name + ".png"),
                RenderImage(scene, data.absolute[frame.index]));
    LabelProvenance provenance;
    provenance.source = "synthetic";
    provenance.frame = frame.index;
    provenance.seed = scene.seed;
    WriteLabel(out / "truth" / (name + ".png"), frame.truth, provenance);
    if (!frame.boxes.empty()) boxes[name] = frame.boxes;
    frames += (frames.empty() ? "" : ", ") + std::to_string(frame.index);
  }
  WriteBoxes(out / "boxes.txt", boxes);

  std::string manifest =
      "profile = custom\n"
      "root = .\n"
      "sensor_mode = raw_cloud\n"
      "image_width = " + std::to_string(scene.image_width) + "\n"
      "image_height = " + std::to_string(scene.image_height) + "\n"
      "calib = calib.txt\n"
      "projection_scale = 1\n"
      "poses = poses.txt\n"
      "pose_convention = relative\n"
      "timestamps = times.txt\n"
      "clouds = clouds\n"
      "images = images\n"
      "vehicle = vehicle.cfg\n";
  if (!frames.empty()) manifest += "frames = " + frames + "\n";
  WriteTextFile(out / "manifest.txt", manifest);
}

}  // namespace pathlabel::io
