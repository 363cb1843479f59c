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

#include "pathlabel/io/label_io.h"

#include <png.h>

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>
#include "pathlabel/error.h"
#include "pathlabel/io/text.h"

namespace pathlabel::io {

namespace {

using nlohmann::json;

// Owns a png_image and releases libpng state on scope exit.
class PngImage {
 public:
  PngImage() {
    image_.version = PNG_IMAGE_VERSION;
    image_.opaque = nullptr;
  }
  ~PngImage() { png_image_free(&image_); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;

  png_image* get() { return &image_; }
  png_image* operator->() { return &image_; }

 private:
  png_image image_{};
};

[[noreturn]] void ThrowPng(const std::filesystem::path& path,
                           png_image* image) {
  throw FormatError(path.string() + ": " + image->message);
}

void WritePng(const std::filesystem::path& path, int width, int height,
              png_uint_32 format, const std::uint8_t* pixels) {
  PngImage image;
  image->width = static_cast<png_uint_32>(width);
  image->height = static_cast<png_uint_32>(height);
  image->format = format;
  if (!png_image_write_to_file(image.get(), path.c_str(), 0, pixels, 0,
                               nullptr)) {
    throw IoError(path.string() + ": " + image->message);
  }
}

}  // namespace

std::filesystem::path SidecarPath(const std::filesystem::path& label_path) {
  std::filesystem::path sidecar = label_path;
  sidecar.replace_extension(".json");
  return sidecar;
}

void WriteLabel(const std::filesystem::path& path, const LabelMask& mask,
                const LabelProvenance& provenance) {
  if (mask.width() <= 0 || mask.height() <= 0) {
    throw ShapeError(path.string() + ": cannot write an empty label");
  }
  WritePng(path, mask.width(), mask.height(), PNG_FORMAT_GRAY,
           mask.data().data());

  json meta;
  meta["width"] = mask.width();
  meta["height"] = mask.height();
  meta["crop_top_rows"] = mask.crop().top_rows;
  meta["crop_bottom_rows"] = mask.crop().bottom_rows;
  meta["source"] = provenance.source;
  meta["frame"] = provenance.frame ? json(*provenance.frame) : json(nullptr);
  meta["seed"] = provenance.seed ? json(*provenance.seed) : json(nullptr);
  json params = json::object();
  for (const auto& [key, value] : provenance.params) params[key] = value;
  meta["params"] = params;
  WriteTextFile(SidecarPath(path), meta.dump(2) + "\n");
}

LabelFile ReadLabelFile(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw IoError(path.string() + ": no such file");
  }
  PngImage image;
  if (!png_image_begin_read_from_file(image.get(), path.c_str())) {
    ThrowPng(path, image.get());
  }
  if (image->format != PNG_FORMAT_GRAY) {
    throw FormatError(path.string() +
                      ": label images must be 8-bit single channel");
  }
  const int width = static_cast<int>(image->width);
  const int height = static_cast<int>(image->height);
  std::vector<std::uint8_t> values(static_cast<std::size_t>(width) * height);
  if (!png_image_finish_read(image.get(), nullptr, values.data(), 0,
                             nullptr)) {
    ThrowPng(path, image.get());
  }

  LabelFile file;
  CropSpec crop;
  const std::filesystem::path sidecar = SidecarPath(path);
  if (std::filesystem::exists(sidecar)) {
    file.has_sidecar = true;
    json meta;
    try {
      meta = json::parse(ReadTextFile(sidecar));
      crop.top_rows = meta.at("crop_top_rows").get<int>();
      crop.bottom_rows = meta.at("crop_bottom_rows").get<int>();
      if (meta.at("width").get<int>() != width ||
          meta.at("height").get<int>() != height) {
        throw ShapeError(sidecar.string() + ": size disagrees with " +
                         path.string());
      }
      file.provenance.source = meta.value("source", "");
      if (meta.contains("frame") && !meta["frame"].is_null()) {
        file.provenance.frame = meta["frame"].get<std::size_t>();
      }
      if (meta.contains("seed") && !meta["seed"].is_null()) {
        file.provenance.seed = meta["seed"].get<std::uint64_t>();
      }
      if (meta.contains("params")) {
        for (const auto& [key, value] : meta["params"].items()) {
          file.provenance.params.emplace_back(key, value.get<std::string>());
        }
      }
    } catch (const json::exception& e) {
      throw FormatError(sidecar.string() + ": " + e.what());
    }
  }
  try {
    file.mask = LabelMask::FromRaw(width, height, crop, values);
  } catch (const Error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return file;
}

RgbImage ReadRgbPng(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw IoError(path.string() + ": no such file");
  }
  PngImage image;
  if (!png_image_begin_read_from_file(image.get(), path.c_str())) {
    ThrowPng(path, image.get());
  }
  image->format = PNG_FORMAT_RGB;
  RgbImage rgb(static_cast<int>(image->width), static_cast<int>(image->height));
  if (!png_image_finish_read(image.get(), nullptr, rgb.pixels.data(), 0,
                             nullptr)) {
    ThrowPng(path, image.get());
  }
  return rgb;
}

void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image) {
  if (image.pixels.size() != static_cast<std::size_t>(image.width) *
                                 image.height * 3 ||
      image.width <= 0 || image.height <= 0) {
    throw ShapeError(path.string() + ": malformed RGB image");
  }
  WritePng(path, image.width, image.height, PNG_FORMAT_RGB,
           image.pixels.data());
}

RgbImage BlendOverlay(const RgbImage& source, const LabelMask& mask,
                      double alpha) {
  if (source.width != mask.width() || source.height != mask.height()) {
    throw ShapeError("overlay source is " + std::to_string(source.width) + "x" +
                     std::to_string(source.height) + " but label is " +
                     std::to_string(mask.width()) + "x" +
                     std::to_string(mask.height()));
  }
  if (!(alpha >= 0. && alpha <= 1.)) {
    throw ValidationError("overlay alpha must lie in [0, 1]");
  }
  RgbImage out = source;
  for (int row = 0; row < mask.height(); ++row) {
    for (int col = 0; col < mask.width(); ++col) {
      const LabelClass label = mask.at(col, row);
      if (label == LabelClass::kUnknown) continue;
      const std::uint8_t tint[3] = {
          static_cast<std::uint8_t>(label == LabelClass::kObstacle ? 255 : 0),
          static_cast<std::uint8_t>(label == LabelClass::kProposedPath ? 255
                                                                       : 0),
          0};
      std::uint8_t* px =
          &out.pixels[(static_cast<std::size_t>(row) * out.width + col) * 3];
      for (int c = 0; c < 3; ++c) {
        px[c] = static_cast<std::uint8_t>(
            std::lround((1. - alpha) * px[c] + alpha * tint[c]));
      }
    }
  }
  return out;
}

void WriteOverlay(const std::filesystem::path& source_png,
                  const LabelMask& mask, const std::filesystem::path& out,
                  double alpha) {
  WriteRgbPng(out, BlendOverlay(ReadRgbPng(source_png), mask, alpha));
}

}  // namespace pathlabel::io
