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

#include "pathlabel/io/cloud_io.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "pathlabel/error.h"

namespace pathlabel::io {

namespace {

float LoadFloat(const unsigned char* bytes) {
  std::uint32_t word = 0;
  for (int i = 3; i >= 0; --i) word = (word << 8) | bytes[i];
  return std::bit_cast<float>(word);
}

void StoreFloat(float value, unsigned char* bytes) {
  std::uint32_t word = std::bit_cast<std::uint32_t>(value);
  for (int i = 0; i < 4; ++i) {
    bytes[i] = static_cast<unsigned char>(word & 0xff);
    word >>= 8;
  }
}

}  // namespace

PointCloud ReadCloud(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  const std::vector<unsigned char> bytes(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() % kCloudRecordBytes != 0) {
    throw FormatError(path.string() + ": size " + std::to_string(bytes.size()) +
                      " is not a multiple of " +
                      std::to_string(kCloudRecordBytes) + " bytes");
  }
  const std::size_t n = bytes.size() / kCloudRecordBytes;
  PointCloud cloud;
  cloud.points.reserve(n);
  cloud.intensity.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char* record = bytes.data() + i * kCloudRecordBytes;
    cloud.points.emplace_back(LoadFloat(record), LoadFloat(record + 4),
                              LoadFloat(record + 8));
    cloud.intensity.push_back(LoadFloat(record + 12));
    if (!cloud.points.back().allFinite()) {
      throw FormatError(path.string() + ": record " + std::to_string(i) +
                        " has a non-finite coordinate");
    }
  }
  return cloud;
}

void WriteCloud(const std::filesystem::path& path, const PointCloud& cloud) {
  cloud.Validate();
  std::vector<unsigned char> bytes(cloud.size() * kCloudRecordBytes);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    unsigned char* record = bytes.data() + i * kCloudRecordBytes;
    const Point3& p = cloud.points[i];
    StoreFloat(static_cast<float>(p.x()), record);
    StoreFloat(static_cast<float>(p.y()), record + 4);
    StoreFloat(static_cast<float>(p.z()), record + 8);
    StoreFloat(cloud.has_intensity() ? cloud.intensity[i] : 0.f, record + 12);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace pathlabel::io
