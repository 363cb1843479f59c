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

#ifndef PATHLABEL_METRICS_H_
#define PATHLABEL_METRICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathlabel/label_composer.h"
#include "pathlabel/mask.h"

namespace pathlabel {

// counts[predicted][actual]. Merging is associative and commutative.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int class_count = kNumLabelClasses);

  int class_count() const { return class_count_; }
  std::uint64_t count(int predicted, int actual) const {
    return counts_[predicted * class_count_ + actual];
  }
  void Add(int predicted, int actual, std::uint64_t n = 1);
  std::uint64_t Total() const;

  std::uint64_t TruePositives(int c) const { return count(c, c); }
  std::uint64_t FalsePositives(int c) const;
  std::uint64_t FalseNegatives(int c) const;

  ConfusionMatrix& Merge(const ConfusionMatrix& other);
  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  int class_count_;
  std::vector<std::uint64_t> counts_;
};

// Tallies every pixel into [pred][truth]. With `ignore_cropped`, rows that
// are cropped in either mask are skipped. Throws ShapeError on size mismatch.
ConfusionMatrix Confusion(const LabelMask& pred, const LabelMask& truth,
                          bool ignore_cropped = true);

// Undefined values (division by zero) are std::nullopt.
struct ClassScores {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> iou;
};

struct SegReport {
  std::vector<ClassScores> per_class;
  // Unweighted mean over classes of each defined metric.
  ClassScores mean;
};

SegReport MakeSegReport(const ConfusionMatrix& cm);

struct EgoLaneReport {
  double max_f = 0.;
  // Mean precision over the sweep, skipping thresholds with no positive
  // prediction.
  double average_precision = 0.;
  double threshold = 0.;  // argmax of F1, first on ties
  std::optional<double> precision;
  double recall = 0.;
  std::optional<double> false_positive_rate;
  double false_negative_rate = 0.;
};

inline constexpr int kDefaultThresholdCount = 100;

// Sweeps thresholds i / (thresholds - 1), i = 0..thresholds-1; a pixel is
// positive when score >= threshold. Throws ShapeError on size mismatch,
// ValidationError for fewer than two thresholds and when `truth` has no
// positive pixels.
EgoLaneReport MaxFAp(std::span<const double> score, const BinaryMask& truth,
                     int thresholds = kDefaultThresholdCount);

enum class ObjectGroup { kVehicle = 0, kPerson = 1, kMisc = 2 };
inline constexpr int kNumObjectGroups = 3;

std::string_view ObjectGroupName(ObjectGroup group);
// car/van/truck/tram -> Vehicle, pedestrian/person_sitting/cyclist -> Person,
// anything else -> Misc. Also accepts the group names themselves. Case
// insensitive.
ObjectGroup GroupForClass(std::string_view object_class);

// Covers the pixels whose centres lie in [min_u, max_u] x [min_v, max_v].
struct BoundingBox {
  double min_u = 0.;
  double min_v = 0.;
  double max_u = 0.;
  double max_v = 0.;
  ObjectGroup group = ObjectGroup::kMisc;
};

inline const std::vector<double> kDefaultInstanceThresholds = {0.50, 0.75};

struct GroupRecall {
  std::uint64_t box_pixels = 0;
  std::uint64_t obstacle_pixels = 0;
  std::size_t instances = 0;
  // One entry per instance threshold.
  std::vector<std::size_t> detected;

  std::optional<double> PixelRecall() const;
  std::optional<double> InstanceRecall(std::size_t threshold_index) const;
};

struct DetReport {
  std::vector<double> thresholds;
  std::array<GroupRecall, kNumObjectGroups> groups;
  GroupRecall all;
};

// Accumulates box recall over any number of frames.
class BoxRecallAccumulator {
 public:
  explicit BoxRecallAccumulator(
      std::vector<double> thresholds = kDefaultInstanceThresholds);

  // Boxes are clipped to the image; boxes covering no pixel centre are
  // skipped. An instance is detected at threshold t iff its obstacle fraction
  // is strictly greater than t. Overlapping boxes each count their pixels.
  void Add(const LabelMask& pred, std::span<const BoundingBox> boxes);

  const DetReport& report() const { return report_; }

 private:
  DetReport report_;
};

DetReport BoxRecall(const LabelMask& pred, std::span<const BoundingBox> boxes,
                    std::vector<double> thresholds =
                        kDefaultInstanceThresholds);

// Line-oriented table and CSV (scope,class,metric,value) writers. Undefined
// values are written as "null".
void WriteSegTable(const SegReport& report, std::ostream& out);
void WriteSegCsv(const SegReport& report, std::string_view scope,
                 std::ostream& out);
void WriteDetTable(const DetReport& report, std::ostream& out);
void WriteDetCsv(const DetReport& report, std::string_view scope,
                 std::ostream& out);
void WriteEgoLaneCsv(const EgoLaneReport& report, std::string_view scope,
                     std::ostream& out);

}  // namespace pathlabel

#endif  // PATHLABEL_METRICS_H_
