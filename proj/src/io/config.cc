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

#include "pathlabel/io/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pathlabel/error.h"
#include "pathlabel/io/text.h"

namespace pathlabel::io {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::Parse(std::string_view text,
                                     std::string_view origin) {
  KeyValueConfig config;
  config.origin_ = std::string(origin);
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    const std::string where =
        config.origin_ + ":" + std::to_string(line_number);
    if (eq == std::string_view::npos) {
      throw ParseError(where + ": expected 'key = value'");
    }
    const std::string key(Trim(line.substr(0, eq)));
    std::string_view value = Trim(line.substr(eq + 1));
    if (const std::size_t hash = value.find(" #"); hash != std::string_view::npos) {
      value = Trim(value.substr(0, hash));
    }
    if (key.empty()) throw ParseError(where + ": empty key");
    if (!config.entries_.emplace(key, std::string(value)).second) {
      throw ParseError(where + ": duplicate key '" + key + "'");
    }
  }
  return config;
}

KeyValueConfig KeyValueConfig::Load(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path), path.string());
}

bool KeyValueConfig::Has(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

void KeyValueConfig::Set(std::string_view key, std::string value) {
  entries_.insert_or_assign(std::string(key), std::move(value));
}

std::string KeyValueConfig::GetString(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ParseError(origin_ + ": missing key '" + std::string(key) + "'");
  }
  return it->second;
}

double KeyValueConfig::GetDouble(std::string_view key) const {
  return ParseDouble(GetString(key), origin_ + ": key '" + std::string(key) + "'");
}

std::int64_t KeyValueConfig::GetInt(std::string_view key) const {
  return ParseInt(GetString(key), origin_ + ": key '" + std::string(key) + "'");
}

bool KeyValueConfig::GetBool(std::string_view key) const {
  const std::string v = GetString(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(origin_ + ": key '" + std::string(key) +
                   "' is not a boolean: '" + v + "'");
}

std::vector<double> KeyValueConfig::GetDoubles(std::string_view key) const {
  std::string v = GetString(key);
  std::replace(v.begin(), v.end(), ',', ' ');
  std::vector<double> values;
  for (const std::string_view token : SplitWhitespace(v)) {
    values.push_back(ParseDouble(token, origin_ + ": key '" +
                                            std::string(key) + "'"));
  }
  return values;
}

std::string KeyValueConfig::GetString(std::string_view key,
                                      std::string fallback) const {
  return Has(key) ? GetString(key) : fallback;
}

double KeyValueConfig::GetDouble(std::string_view key, double fallback) const {
  return Has(key) ? GetDouble(key) : fallback;
}

std::int64_t KeyValueConfig::GetInt(std::string_view key,
                                    std::int64_t fallback) const {
  return Has(key) ? GetInt(key) : fallback;
}

void KeyValueConfig::RejectUnknown(
    const std::vector<std::string_view>& known) const {
  for (const auto& [key, value] : entries_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError(origin_ + ": unknown key '" + key + "'");
    }
  }
}

const std::vector<std::string_view>& PipelineConfig::Keys() {
  static const std::vector<std::string_view> keys = {
      "vehicle_width",       "contact_height",
      "contact_forward",     "contact_left_x",
      "contact_right_x",     "crop_top_fraction",
      "crop_bottom_fraction", "lookahead_distance",
      "guard_band",          "obstacle_height",
      "ground_forward",      "ground_lateral",
      "mlesac_iterations",   "mlesac_inlier_sigma",
      "mlesac_max_inlier_cost", "seed",
      "sensor_mode",         "sample_rate",
      "yaw_bins",            "sample_seed",
      "threshold_count",     "instance_thresholds",
      "threads",
  };
  return keys;
}

void PipelineConfig::Apply(const KeyValueConfig& c) {
  c.RejectUnknown(Keys());
  vehicle_width = c.GetDouble("vehicle_width", vehicle_width);
  contact_height = c.GetDouble("contact_height", contact_height);
  contact_forward = c.GetDouble("contact_forward", contact_forward);
  if (c.Has("contact_left_x")) contact_left_x = c.GetDouble("contact_left_x");
  if (c.Has("contact_right_x")) contact_right_x = c.GetDouble("contact_right_x");
  crop_top_fraction = c.GetDouble("crop_top_fraction", crop_top_fraction);
  crop_bottom_fraction =
      c.GetDouble("crop_bottom_fraction", crop_bottom_fraction);

  labeling.lookahead_distance =
      c.GetDouble("lookahead_distance", labeling.lookahead_distance);
  labeling.guard_band = c.GetDouble("guard_band", labeling.guard_band);
  labeling.obstacle_height =
      c.GetDouble("obstacle_height", labeling.obstacle_height);
  labeling.ground_region.forward =
      c.GetDouble("ground_forward", labeling.ground_region.forward);
  labeling.ground_region.lateral =
      c.GetDouble("ground_lateral", labeling.ground_region.lateral);
  labeling.mlesac.iterations = static_cast<int>(
      c.GetInt("mlesac_iterations", labeling.mlesac.iterations));
  if (c.Has("mlesac_inlier_sigma")) {
    labeling.mlesac.inlier_sigma = c.GetDouble("mlesac_inlier_sigma");
    labeling.mlesac.max_inlier_cost = 3. * labeling.mlesac.inlier_sigma;
  }
  labeling.mlesac.max_inlier_cost =
      c.GetDouble("mlesac_max_inlier_cost", labeling.mlesac.max_inlier_cost);
  labeling.mlesac.random_seed = static_cast<std::uint64_t>(
      c.GetInt("seed", static_cast<std::int64_t>(labeling.mlesac.random_seed)));
  if (c.Has("sensor_mode")) {
    labeling.sensor_mode = ParseSensorMode(c.GetString("sensor_mode"));
  }

  sample_rate = c.GetDouble("sample_rate", sample_rate);
  yaw_bins = static_cast<int>(c.GetInt("yaw_bins", yaw_bins));
  sample_seed = static_cast<std::uint64_t>(
      c.GetInt("sample_seed", static_cast<std::int64_t>(sample_seed)));
  threshold_count =
      static_cast<int>(c.GetInt("threshold_count", threshold_count));
  if (c.Has("instance_thresholds")) {
    instance_thresholds = c.GetDoubles("instance_thresholds");
  }
  threads = static_cast<int>(c.GetInt("threads", threads));

  labeling.mlesac.Validate();
  if (!(vehicle_width > 0.)) {
    throw ValidationError(c.origin() + ": vehicle_width must be positive");
  }
  if (!(sample_rate > 0.)) {
    throw ValidationError(c.origin() + ": sample_rate must be positive");
  }
  if (yaw_bins < 1) throw ValidationError(c.origin() + ": yaw_bins must be >= 1");
  if (threshold_count < 2) {
    throw ValidationError(c.origin() + ": threshold_count must be >= 2");
  }
}

KeyValueConfig PipelineConfig::ToKeyValue() const {
  KeyValueConfig c;
  c.Set("vehicle_width", FormatDouble(vehicle_width));
  c.Set("contact_height", FormatDouble(contact_height));
  c.Set("contact_forward", FormatDouble(contact_forward));
  if (contact_left_x) c.Set("contact_left_x", FormatDouble(*contact_left_x));
  if (contact_right_x) c.Set("contact_right_x", FormatDouble(*contact_right_x));
  c.Set("crop_top_fraction", FormatDouble(crop_top_fraction));
  c.Set("crop_bottom_fraction", FormatDouble(crop_bottom_fraction));
  c.Set("lookahead_distance", FormatDouble(labeling.lookahead_distance));
  c.Set("guard_band", FormatDouble(labeling.guard_band));
  c.Set("obstacle_height", FormatDouble(labeling.obstacle_height));
  c.Set("ground_forward", FormatDouble(labeling.ground_region.forward));
  c.Set("ground_lateral", FormatDouble(labeling.ground_region.lateral));
  c.Set("mlesac_iterations", std::to_string(labeling.mlesac.iterations));
  c.Set("mlesac_inlier_sigma", FormatDouble(labeling.mlesac.inlier_sigma));
  c.Set("mlesac_max_inlier_cost",
        FormatDouble(labeling.mlesac.max_inlier_cost));
  c.Set("seed", std::to_string(labeling.mlesac.random_seed));
  c.Set("sensor_mode", std::string(SensorModeName(labeling.sensor_mode)));
  c.Set("sample_rate", FormatDouble(sample_rate));
  c.Set("yaw_bins", std::to_string(yaw_bins));
  c.Set("sample_seed", std::to_string(sample_seed));
  c.Set("threshold_count", std::to_string(threshold_count));
  std::string thresholds;
  for (const double t : instance_thresholds) {
    if (!thresholds.empty()) thresholds += ", ";
    thresholds += FormatDouble(t);
  }
  c.Set("instance_thresholds", thresholds);
  c.Set("threads", std::to_string(threads));
  return c;
}

std::string PipelineConfig::Dump() const {
  const KeyValueConfig c = ToKeyValue();
  std::ostringstream out;
  for (const std::string_view key : Keys()) {
    const auto it = c.entries().find(key);
    if (it != c.entries().end()) {
      out << key << " = " << it->second << '\n';
    } else {
      out << "# " << key << " = (vehicle_width / 2 on either side)\n";
    }
  }
  return out.str();
}

ContactCalibration PipelineConfig::Contact() const {
  ContactCalibration contact =
      ContactCalibration::FromVehicle(vehicle_width, contact_height,
                                      contact_forward);
  if (contact_left_x) contact.left.x() = *contact_left_x;
  if (contact_right_x) contact.right.x() = *contact_right_x;
  contact.Validate();
  return contact;
}

CropSpec PipelineConfig::Crop(int image_height) const {
  return CropSpec::FromFractions(image_height, crop_top_fraction,
                                 crop_bottom_fraction);
}

}  // namespace pathlabel::io
