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

#ifndef PATHLABEL_IO_CONFIG_H_
#define PATHLABEL_IO_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathlabel/label_composer.h"
#include "pathlabel/metrics.h"
#include "pathlabel/sampler.h"

namespace pathlabel::io {

// Line-based `key = value` text. Blank lines and lines starting with '#' are
// ignored; a key may appear only once.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  // `origin` names the source in error messages.
  static KeyValueConfig Parse(std::string_view text,
                              std::string_view origin = "<string>");
  static KeyValueConfig Load(const std::filesystem::path& path);

  bool Has(std::string_view key) const;
  void Set(std::string_view key, std::string value);
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }
  const std::string& origin() const { return origin_; }

  std::string GetString(std::string_view key) const;
  double GetDouble(std::string_view key) const;
  std::int64_t GetInt(std::string_view key) const;
  bool GetBool(std::string_view key) const;
  // Comma or whitespace separated.
  std::vector<double> GetDoubles(std::string_view key) const;

  std::string GetString(std::string_view key, std::string fallback) const;
  double GetDouble(std::string_view key, double fallback) const;
  std::int64_t GetInt(std::string_view key, std::int64_t fallback) const;

  // Throws ParseError naming the first key not in `known`.
  void RejectUnknown(const std::vector<std::string_view>& known) const;

 private:
  std::string origin_ = "<string>";
  std::map<std::string, std::string, std::less<>> entries_;
};

// Every tunable of the labelling, sampling and evaluation pipeline.
struct PipelineConfig {
  double vehicle_width = 2.2;
  double contact_height = 1.65;
  double contact_forward = 0.;
  // Lateral contact positions; default to -/+ vehicle_width / 2.
  std::optional<double> contact_left_x;
  std::optional<double> contact_right_x;

  double crop_top_fraction = 0.15;
  double crop_bottom_fraction = 0.10;

  LabelingParams labeling;

  double sample_rate = kDefaultSampleRate;
  int yaw_bins = kDefaultYawBins;
  std::uint64_t sample_seed = 0;

  int threshold_count = kDefaultThresholdCount;
  std::vector<double> instance_thresholds = kDefaultInstanceThresholds;

  int threads = 0;  // 0: hardware concurrency

  static const std::vector<std::string_view>& Keys();

  // Overrides the fields named in `config`; rejects unknown keys.
  void Apply(const KeyValueConfig& config);
  KeyValueConfig ToKeyValue() const;
  std::string Dump() const;

  ContactCalibration Contact() const;
  CropSpec Crop(int image_height) const;
};

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_CONFIG_H_
