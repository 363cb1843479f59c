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

#ifndef PATHLABEL_IO_POSE_IO_H_
#define PATHLABEL_IO_POSE_IO_H_

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "pathlabel/geometry.h"

namespace pathlabel::io {

// How the lines of a pose file relate to the frames of a sequence.
enum class PoseConvention {
  // Line i is G_{C_i C_{i+1}}.
  kRelative,
  // Line i is the pose of frame i in a fixed world frame (KITTI odometry
  // ground truth); converted to relatives on read.
  kAbsolute,
};

PoseConvention ParsePoseConvention(std::string_view name);

inline constexpr double kPoseOrthonormalityTolerance = 1e-3;

// One pose per line: 12 whitespace-separated reals, row-major [R|t]. Blank
// lines are skipped. Throws ParseError naming the line for malformed lines and
// ValidationError for rotations that are not orthonormal within
// kPoseOrthonormalityTolerance.
std::vector<RigidTransform> ReadPoseLines(const std::filesystem::path& path);

// ReadPoseLines() followed by AbsoluteToRelative() when `convention` is
// kAbsolute.
std::vector<RigidTransform> ReadPoses(const std::filesystem::path& path,
                                      PoseConvention convention =
                                          PoseConvention::kRelative);

// Writes with enough digits to round-trip every double.
void WritePoses(const std::filesystem::path& path,
                std::span<const RigidTransform> poses);

// relatives[i] = absolute[i]^-1 * absolute[i+1].
std::vector<RigidTransform> AbsoluteToRelative(
    std::span<const RigidTransform> absolute);
// absolute[0] = identity, absolute[i+1] = absolute[i] * relatives[i].
std::vector<RigidTransform> RelativeToAbsolute(
    std::span<const RigidTransform> relatives);

// One timestamp (seconds) per line, strictly increasing.
std::vector<double> ReadTimestamps(const std::filesystem::path& path);
void WriteTimestamps(const std::filesystem::path& path,
                     std::span<const double> timestamps);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_POSE_IO_H_
