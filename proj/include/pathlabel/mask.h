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

#ifndef PATHLABEL_MASK_H_
#define PATHLABEL_MASK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathlabel/error.h"

namespace pathlabel {

// Row-major per-pixel boolean image.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height)
      : width_(width),
        height_(height),
        bits_(static_cast<std::size_t>(width) * height, 0) {
    if (width < 0 || height < 0) {
      throw ShapeError("negative mask size " + std::to_string(width) + "x" +
                       std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int col, int row) const { return bits_[Index(col, row)] != 0; }
  void set(int col, int row, bool value = true) {
    bits_[Index(col, row)] = value ? 1 : 0;
  }

  std::size_t Count() const;
  // Fills row `row` over the inclusive column range, clamped to the image.
  void FillSpan(int row, int first_col, int last_col);

  BinaryMask& operator|=(const BinaryMask& other);
  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

  std::span<const std::uint8_t> data() const { return bits_; }
  std::span<std::uint8_t> data() { return bits_; }

 private:
  std::size_t Index(int col, int row) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline std::size_t BinaryMask::Count() const {
  std::size_t n = 0;
  for (const std::uint8_t b : bits_) n += b;
  return n;
}

inline void BinaryMask::FillSpan(int row, int first_col, int last_col) {
  if (row < 0 || row >= height_) return;
  if (first_col < 0) first_col = 0;
  if (last_col >= width_) last_col = width_ - 1;
  for (int c = first_col; c <= last_col; ++c) bits_[Index(c, row)] = 1;
}

inline BinaryMask& BinaryMask::operator|=(const BinaryMask& other) {
  if (other.width_ != width_ || other.height_ != height_) {
    throw ShapeError("cannot merge masks of different size");
  }
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

}  // namespace pathlabel

#endif  // PATHLABEL_MASK_H_
