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

#include "pathlabel/io/manifest.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "pathlabel/error.h"
#include "pathlabel/io/text.h"

namespace pathlabel::io {

namespace {

namespace fs = std::filesystem;

std::string Substitute(std::string pattern, const std::string& sequence) {
  const std::string token = "{seq}";
  for (std::size_t pos = pattern.find(token); pos != std::string::npos;
       pos = pattern.find(token, pos + sequence.size())) {
    pattern.replace(pos, token.size(), sequence);
  }
  return pattern;
}

fs::path RequireExists(const fs::path& path, std::string_view key,
                       const fs::path& manifest) {
  if (!fs::exists(path)) {
    throw IoError(manifest.string() + ": " + std::string(key) + " '" +
                  path.string() + "' does not exist");
  }
  return path;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (const char c : text + ",") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) items.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  return items;
}

}  // namespace

Eigen::Matrix<double, 3, 4> ReadCalibrationMatrix(const fs::path& path,
                                                  std::string_view key) {
  const std::string text = ReadTextFile(path);
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_number;
    const std::string_view line = std::string_view(text).substr(pos, end - pos);
    pos = end + 1;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    std::string_view name = line.substr(0, colon);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name != key) continue;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    const std::vector<std::string_view> tokens =
        SplitWhitespace(line.substr(colon + 1));
    if (tokens.size() != 12) {
      throw ParseError(where + ": expected 12 numbers for " + std::string(key) +
                       ", found " + std::to_string(tokens.size()));
    }
    Eigen::Matrix<double, 3, 4> m;
    for (int i = 0; i < 12; ++i) m(i / 4, i % 4) = ParseDouble(tokens[i], where);
    return m;
  }
  throw ParseError(path.string() + ": no calibration entry '" +
                   std::string(key) + "'");
}

std::optional<DatasetProfile> FindProfile(std::string_view name) {
  if (name == "kitti") {
    return DatasetProfile{"kitti", 621, 187, SensorMode::kRawCloud, 2.2};
  }
  if (name == "oxford") {
    return DatasetProfile{"oxford", 640, 256, SensorMode::kPrefilteredContours,
                          2.43};
  }
  return std::nullopt;
}

const std::vector<std::string_view>& DatasetManifest::Keys() {
  static const std::vector<std::string_view> keys = {
      "profile",        "root",           "sequences",    "sensor_mode",
      "image_width",    "image_height",   "calib",        "projection_key",
      "extrinsic_key",  "projection_scale", "poses",      "pose_convention",
      "timestamps",     "frame_rate",     "clouds",       "images",
      "vehicle",        "frames"};
  return keys;
}

DatasetManifest DatasetManifest::Load(const fs::path& path) {
  const KeyValueConfig kv = KeyValueConfig::Load(path);
  kv.RejectUnknown(Keys());
  DatasetManifest m;
  m.source = path;
  const fs::path base = path.parent_path();

  m.profile = kv.GetString("profile", "custom");
  const std::optional<DatasetProfile> profile = FindProfile(m.profile);
  if (!profile && m.profile != "custom") {
    throw ValidationError(path.string() + ": unknown profile '" + m.profile +
                          "' (expected kitti, oxford or custom)");
  }
  const bool kitti = m.profile == "kitti";

  m.root = kv.GetString("root", ".");
  if (m.root.is_relative()) m.root = base / m.root;
  RequireExists(m.root, "root", path);

  if (profile) {
    m.sensor_mode = profile->sensor_mode;
    m.image_width = profile->image_width;
    m.image_height = profile->image_height;
  }
  if (kv.Has("sensor_mode")) {
    m.sensor_mode = ParseSensorMode(kv.GetString("sensor_mode"));
  }
  m.image_width = static_cast<int>(kv.GetInt("image_width", m.image_width));
  m.image_height = static_cast<int>(kv.GetInt("image_height", m.image_height));
  if (m.image_width <= 0 || m.image_height <= 0) {
    throw ValidationError(path.string() +
                          ": image_width and image_height must be positive");
  }
  if (profile && (m.image_width != profile->image_width ||
                  m.image_height != profile->image_height)) {
    throw ValidationError(
        path.string() + ": profile " + profile->name + " expects " +
        std::to_string(profile->image_width) + "x" +
        std::to_string(profile->image_height) + " images, manifest says " +
        std::to_string(m.image_width) + "x" + std::to_string(m.image_height));
  }

  m.projection_key = kv.GetString("projection_key", "P2");
  m.extrinsic_key = kv.GetString("extrinsic_key", "Tr");
  m.projection_scale =
      kv.GetDouble("projection_scale", kitti ? 0.5 : 1.);
  if (!(m.projection_scale > 0.)) {
    throw ValidationError(path.string() + ": projection_scale must be > 0");
  }
  m.pose_convention = ParsePoseConvention(
      kv.GetString("pose_convention", kitti ? "absolute" : "relative"));
  m.frame_rate = kv.GetDouble("frame_rate", 10.);
  if (!(m.frame_rate > 0.)) {
    throw ValidationError(path.string() + ": frame_rate must be > 0");
  }
  if (kv.Has("frames")) {
    m.frames = ParseIndexList(kv.GetString("frames"), path.string() + ": frames");
  }
  if (kv.Has("vehicle")) {
    fs::path vehicle = kv.GetString("vehicle");
    if (vehicle.is_relative()) vehicle = base / vehicle;
    m.vehicle_config = RequireExists(vehicle, "vehicle", path);
  }

  const std::string seq_dir = kitti ? "sequences/{seq}/" : "";
  const std::string calib = kv.GetString("calib", seq_dir + "calib.txt");
  const std::string poses =
      kv.GetString("poses", kitti ? "poses/{seq}.txt" : "poses.txt");
  const std::string clouds =
      kv.GetString("clouds", seq_dir + (kitti ? "velodyne" : "clouds"));
  std::optional<std::string> timestamps;
  if (kv.Has("timestamps")) {
    timestamps = kv.GetString("timestamps");
  } else if (kitti) {
    timestamps = seq_dir + "times.txt";
  }
  std::optional<std::string> images;
  if (kv.Has("images")) {
    images = kv.GetString("images");
  } else if (kitti) {
    images = seq_dir + "image_2";
  }

  std::vector<std::string> names = SplitList(kv.GetString("sequences", ""));
  if (names.empty()) names.push_back("");
  for (const std::string& name : names) {
    SequencePaths s;
    s.name = name;
    s.calib = RequireExists(m.root / Substitute(calib, name), "calib", path);
    s.poses = RequireExists(m.root / Substitute(poses, name), "poses", path);
    s.clouds = RequireExists(m.root / Substitute(clouds, name), "clouds", path);
    if (timestamps) {
      s.timestamps = RequireExists(m.root / Substitute(*timestamps, name),
                                   "timestamps", path);
    }
    if (images) {
      s.images =
          RequireExists(m.root / Substitute(*images, name), "images", path);
    }
    m.sequences.push_back(std::move(s));
  }
  return m;
}

PipelineConfig DatasetManifest::LoadPipelineConfig() const {
  PipelineConfig config;
  if (const std::optional<DatasetProfile> p = FindProfile(profile)) {
    config.vehicle_width = p->vehicle_width;
  }
  config.labeling.sensor_mode = sensor_mode;
  if (vehicle_config) config.Apply(KeyValueConfig::Load(*vehicle_config));
  return config;
}

std::string FrameName(std::size_t frame) {
  char name[32];
  std::snprintf(name, sizeof(name), "%06zu", frame);
  return name;
}

fs::path Sequence::CloudPath(std::size_t frame) const {
  return paths.clouds / (FrameName(frame) + ".bin");
}

std::optional<fs::path> Sequence::ImagePath(std::size_t frame) const {
  if (!paths.images) return std::nullopt;
  return *paths.images / (FrameName(frame) + ".png");
}

Sequence LoadSequence(const DatasetManifest& manifest,
                      const SequencePaths& paths,
                      const ContactCalibration& contact) {
  Eigen::Matrix<double, 3, 4> projection =
      ReadCalibrationMatrix(paths.calib, manifest.projection_key);
  projection.topRows<2>() *= manifest.projection_scale;
  const Eigen::Matrix<double, 3, 4> extrinsic =
      ReadCalibrationMatrix(paths.calib, manifest.extrinsic_key);
  const RigidTransform camera_from_sensor =
      RigidTransform::FromMatrix34(extrinsic);
  if (!camera_from_sensor.IsValid(kPoseOrthonormalityTolerance)) {
    throw ValidationError(paths.calib.string() + ": " +
                          manifest.extrinsic_key +
                          " rotation is not orthonormal");
  }
  Sequence seq{paths,
               SensorRig{CameraModel(projection, manifest.image_width,
                                     manifest.image_height),
                         camera_from_sensor, contact},
               {},
               {}};

  seq.relatives = ReadPoses(paths.poses, manifest.pose_convention);
  if (manifest.pose_convention == PoseConvention::kAbsolute &&
      seq.relatives.empty()) {
    throw ValidationError(paths.poses.string() +
                          ": an absolute pose file needs at least one pose");
  }
  if (paths.timestamps) {
    seq.timestamps = ReadTimestamps(*paths.timestamps);
    if (seq.timestamps.size() != seq.frame_count()) {
      throw ValidationError(paths.timestamps->string() + ": " +
                            std::to_string(seq.timestamps.size()) +
                            " timestamps for " +
                            std::to_string(seq.frame_count()) + " frames");
    }
  } else {
    for (std::size_t i = 0; i < seq.frame_count(); ++i) {
      seq.timestamps.push_back(static_cast<double>(i) / manifest.frame_rate);
    }
  }
  return seq;
}

}  // namespace pathlabel::io
