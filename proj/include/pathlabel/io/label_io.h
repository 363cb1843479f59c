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

#ifndef PATHLABEL_IO_LABEL_IO_H_
#define PATHLABEL_IO_LABEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathlabel/label_composer.h"

namespace pathlabel::io {

// Where a label came from; stored next to the raster.
struct LabelProvenance {
  std::string source;
  std::optional<std::size_t> frame;
  std::optional<std::uint64_t> seed;
  // Effective configuration as key/value pairs.
  std::vector<std::pair<std::string, std::string>> params;
};

struct LabelFile {
  LabelMask mask;
  LabelProvenance provenance;
  bool has_sidecar = false;
};

// "dir/000042.png" -> "dir/000042.json".
std::filesystem::path SidecarPath(const std::filesystem::path& label_path);

// Writes an 8-bit grayscale PNG holding the class values and a JSON sidecar
// with the crop and provenance. Output is byte-for-byte deterministic.
void WriteLabel(const std::filesystem::path& path, const LabelMask& mask,
                const LabelProvenance& provenance = {});

// Reads a label PNG and, if present, its sidecar. Without a sidecar the crop
// is empty. Throws FormatError for images that are not 8-bit single channel or
// hold values outside {0, 1, 2}.
LabelFile ReadLabelFile(const std::filesystem::path& path);
inline LabelMask ReadLabel(const std::filesystem::path& path) {
  return ReadLabelFile(path).mask;
}

// 8-bit interleaved RGB.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(int w, int h)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}
};

// Any PNG, converted to 8-bit RGB.
RgbImage ReadRgbPng(const std::filesystem::path& path);
void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image);

// Tints proposed-path pixels green and obstacle pixels red. `alpha` is the
// weight of the class colour. Throws ShapeError on a size mismatch.
RgbImage BlendOverlay(const RgbImage& source, const LabelMask& mask,
                      double alpha = 0.5);
void WriteOverlay(const std::filesystem::path& source_png,
                  const LabelMask& mask, const std::filesystem::path& out,
                  double alpha = 0.5);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_LABEL_IO_H_
