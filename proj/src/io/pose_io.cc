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

#include "pathlabel/io/pose_io.h"

#include <string>

#include "pathlabel/error.h"
#include "pathlabel/io/text.h"

namespace pathlabel::io {

namespace {

template <typename Fn>
void ForEachLine(const std::string& text, Fn&& fn) {
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_number;
    fn(line_number, std::string_view(text).substr(pos, end - pos));
    pos = end + 1;
  }
}

}  // namespace

PoseConvention ParsePoseConvention(std::string_view name) {
  if (name == "relative") return PoseConvention::kRelative;
  if (name == "absolute") return PoseConvention::kAbsolute;
  throw ParseError("unknown pose convention '" + std::string(name) +
                   "' (expected relative or absolute)");
}

std::vector<RigidTransform> ReadPoseLines(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<RigidTransform> poses;
  ForEachLine(text, [&](std::size_t line_number, std::string_view line) {
    const std::vector<std::string_view> tokens = SplitWhitespace(line);
    if (tokens.empty()) return;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    if (tokens.size() != 12) {
      throw ParseError(where + ": expected 12 numbers, found " +
                       std::to_string(tokens.size()));
    }
    Eigen::Matrix<double, 3, 4> m;
    for (int i = 0; i < 12; ++i) m(i / 4, i % 4) = ParseDouble(tokens[i], where);
    const RigidTransform pose = RigidTransform::FromMatrix34(m);
    if (!pose.IsValid(kPoseOrthonormalityTolerance)) {
      throw ValidationError(where + ": rotation is not orthonormal");
    }
    poses.push_back(pose);
  });
  return poses;
}

std::vector<RigidTransform> ReadPoses(const std::filesystem::path& path,
                                      PoseConvention convention) {
  std::vector<RigidTransform> poses = ReadPoseLines(path);
  if (convention == PoseConvention::kAbsolute) {
    return AbsoluteToRelative(poses);
  }
  return poses;
}

void WritePoses(const std::filesystem::path& path,
                std::span<const RigidTransform> poses) {
  std::string text;
  for (const RigidTransform& pose : poses) {
    const Eigen::Matrix<double, 3, 4> m = pose.ToMatrix34();
    for (int i = 0; i < 12; ++i) {
      if (i > 0) text += ' ';
      text += FormatDouble(m(i / 4, i % 4));
    }
    text += '\n';
  }
  WriteTextFile(path, text);
}

std::vector<RigidTransform> AbsoluteToRelative(
    std::span<const RigidTransform> absolute) {
  std::vector<RigidTransform> relatives;
  for (std::size_t i = 0; i + 1 < absolute.size(); ++i) {
    relatives.push_back(absolute[i].inverse() * absolute[i + 1]);
  }
  return relatives;
}

std::vector<RigidTransform> RelativeToAbsolute(
    std::span<const RigidTransform> relatives) {
  std::vector<RigidTransform> absolute = {RigidTransform::Identity()};
  for (const RigidTransform& r : relatives) {
    absolute.push_back(absolute.back() * r);
  }
  return absolute;
}

std::vector<double> ReadTimestamps(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<double> timestamps;
  ForEachLine(text, [&](std::size_t line_number, std::string_view line) {
    const std::vector<std::string_view> tokens = SplitWhitespace(line);
    if (tokens.empty()) return;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    if (tokens.size() != 1) throw ParseError(where + ": expected one timestamp");
    const double t = ParseDouble(tokens[0], where);
    if (!timestamps.empty() && !(t > timestamps.back())) {
      throw ValidationError(where + ": timestamps must be strictly increasing");
    }
    timestamps.push_back(t);
  });
  return timestamps;
}

void WriteTimestamps(const std::filesystem::path& path,
                     std::span<const double> timestamps) {
  std::string text;
  for (const double t : timestamps) text += FormatDouble(t) + "\n";
  WriteTextFile(path, text);
}

}  // namespace pathlabel::io
