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

#ifndef PATHLABEL_IO_CLOUD_IO_H_
#define PATHLABEL_IO_CLOUD_IO_H_

#include <filesystem>

#include "pathlabel/obstacle_labeler.h"

namespace pathlabel::io {

// Bytes per record: x, y, z, intensity as little-endian float32.
inline constexpr std::size_t kCloudRecordBytes = 16;

// Reads a velodyne-style binary scan. Throws FormatError if the file size is
// not a multiple of kCloudRecordBytes and IoError if it cannot be read.
PointCloud ReadCloud(const std::filesystem::path& path);

// Coordinates are narrowed to float32. Missing intensities are written as 0.
void WriteCloud(const std::filesystem::path& path, const PointCloud& cloud);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_CLOUD_IO_H_
