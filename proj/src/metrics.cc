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

#include "pathlabel/metrics.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "glog/logging.h"
#include "pathlabel/error.h"

namespace pathlabel {

namespace {

std::optional<double> Ratio(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) return std::nullopt;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::optional<double> MeanOfDefined(const std::vector<ClassScores>& scores,
                                    std::optional<double> ClassScores::*field) {
  double sum = 0.;
  int n = 0;
  for (const ClassScores& s : scores) {
    if (s.*field) {
      sum += *(s.*field);
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::string Format(const std::optional<double>& value) {
  if (!value) return "null";
  // Shortest representation that round-trips.
  std::array<char, 32> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), *value);
  return std::string(buffer.data(), ptr);
}

std::string Percent(const std::optional<double>& value) {
  if (!value) return "    n/a";
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << std::setw(6) << 100. * *value
      << '%';
  return out.str();
}

// Clamps to [-1, size] so that out-of-image ranges come out empty.
int ClampIndex(double x, int size) {
  if (!(x > -1.)) return -1;
  if (!(x < size)) return size;
  return static_cast<int>(x);
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(int class_count)
    : class_count_(class_count),
      counts_(static_cast<std::size_t>(class_count) * class_count, 0) {
  if (class_count < 1) throw ValidationError("confusion needs >= 1 class");
}

void ConfusionMatrix::Add(int predicted, int actual, std::uint64_t n) {
  if (predicted < 0 || predicted >= class_count_ || actual < 0 ||
      actual >= class_count_) {
    throw IndexError("class pair (" + std::to_string(predicted) + ", " +
                     std::to_string(actual) + ") outside the matrix");
  }
  counts_[predicted * class_count_ + actual] += n;
}

std::uint64_t ConfusionMatrix::Total() const {
  std::uint64_t total = 0;
  for (const std::uint64_t c : counts_) total += c;
  return total;
}

std::uint64_t ConfusionMatrix::FalsePositives(int c) const {
  std::uint64_t n = 0;
  for (int a = 0; a < class_count_; ++a) {
    if (a != c) n += count(c, a);
  }
  return n;
}

std::uint64_t ConfusionMatrix::FalseNegatives(int c) const {
  std::uint64_t n = 0;
  for (int p = 0; p < class_count_; ++p) {
    if (p != c) n += count(p, c);
  }
  return n;
}

ConfusionMatrix& ConfusionMatrix::Merge(const ConfusionMatrix& other) {
  if (other.class_count_ != class_count_) {
    throw ShapeError("cannot merge confusion matrices of different size");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

ConfusionMatrix Confusion(const LabelMask& pred, const LabelMask& truth,
                          bool ignore_cropped) {
  if (pred.width() != truth.width() || pred.height() != truth.height()) {
    throw ShapeError("prediction is " + std::to_string(pred.width()) + "x" +
                     std::to_string(pred.height()) + " but truth is " +
                     std::to_string(truth.width()) + "x" +
                     std::to_string(truth.height()));
  }
  ConfusionMatrix cm(kNumLabelClasses);
  for (int row = 0; row < pred.height(); ++row) {
    if (ignore_cropped && (pred.IsCropped(row) || truth.IsCropped(row))) {
      continue;
    }
    for (int col = 0; col < pred.width(); ++col) {
      cm.Add(static_cast<int>(pred.at(col, row)),
             static_cast<int>(truth.at(col, row)));
    }
  }
  return cm;
}

SegReport MakeSegReport(const ConfusionMatrix& cm) {
  SegReport report;
  for (int c = 0; c < cm.class_count(); ++c) {
    const std::uint64_t tp = cm.TruePositives(c);
    const std::uint64_t fp = cm.FalsePositives(c);
    const std::uint64_t fn = cm.FalseNegatives(c);
    report.per_class.push_back(
        {Ratio(tp, tp + fp), Ratio(tp, tp + fn), Ratio(tp, tp + fp + fn)});
  }
  report.mean.precision = MeanOfDefined(report.per_class, &ClassScores::precision);
  report.mean.recall = MeanOfDefined(report.per_class, &ClassScores::recall);
  report.mean.iou = MeanOfDefined(report.per_class, &ClassScores::iou);
  return report;
}

EgoLaneReport MaxFAp(std::span<const double> score, const BinaryMask& truth,
                     int thresholds) {
  if (score.size() != truth.size()) {
    throw ShapeError("score map has " + std::to_string(score.size()) +
                     " pixels but truth has " + std::to_string(truth.size()));
  }
  if (thresholds < 2) throw ValidationError("need >= 2 thresholds");
  const std::span<const std::uint8_t> positive = truth.data();
  std::uint64_t positives = 0;
  for (const std::uint8_t p : positive) positives += p;
  if (positives == 0) {
    throw ValidationError("truth has no positive pixels; recall is undefined");
  }
  const std::uint64_t negatives = positive.size() - positives;

  EgoLaneReport report;
  double precision_sum = 0.;
  int precision_count = 0;
  bool have_best = false;
  for (int i = 0; i < thresholds; ++i) {
    const double threshold = static_cast<double>(i) / (thresholds - 1);
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    for (std::size_t p = 0; p < score.size(); ++p) {
      if (score[p] >= threshold) {
        if (positive[p]) {
          ++tp;
        } else {
          ++fp;
        }
      }
    }
    const std::uint64_t fn = positives - tp;
    const std::optional<double> precision = Ratio(tp, tp + fp);
    const double recall = static_cast<double>(tp) / positives;
    double f1 = 0.;
    if (precision) {
      precision_sum += *precision;
      ++precision_count;
      if (*precision + recall > 0.) {
        f1 = 2. * *precision * recall / (*precision + recall);
      }
    }
    if (!have_best || f1 > report.max_f) {
      have_best = true;
      report.max_f = f1;
      report.threshold = threshold;
      report.precision = precision;
      report.recall = recall;
      report.false_positive_rate = Ratio(fp, negatives);
      report.false_negative_rate = static_cast<double>(fn) / positives;
    }
  }
  report.average_precision =
      precision_count > 0 ? precision_sum / precision_count : 0.;
  return report;
}

std::string_view ObjectGroupName(ObjectGroup group) {
  switch (group) {
    case ObjectGroup::kVehicle:
      return "Vehicle";
    case ObjectGroup::kPerson:
      return "Person";
    case ObjectGroup::kMisc:
      return "Misc";
  }
  return "Misc";
}

ObjectGroup GroupForClass(std::string_view object_class) {
  const std::string c = Lower(object_class);
  if (c == "vehicle" || c == "car" || c == "van" || c == "truck" ||
      c == "tram") {
    return ObjectGroup::kVehicle;
  }
  if (c == "person" || c == "pedestrian" || c == "person_sitting" ||
      c == "person sitting" || c == "cyclist") {
    return ObjectGroup::kPerson;
  }
  return ObjectGroup::kMisc;
}

std::optional<double> GroupRecall::PixelRecall() const {
  return Ratio(obstacle_pixels, box_pixels);
}

std::optional<double> GroupRecall::InstanceRecall(
    std::size_t threshold_index) const {
  return Ratio(detected.at(threshold_index), instances);
}

BoxRecallAccumulator::BoxRecallAccumulator(std::vector<double> thresholds) {
  report_.thresholds = std::move(thresholds);
  for (GroupRecall& g : report_.groups) {
    g.detected.assign(report_.thresholds.size(), 0);
  }
  report_.all.detected.assign(report_.thresholds.size(), 0);
}

void BoxRecallAccumulator::Add(const LabelMask& pred,
                               std::span<const BoundingBox> boxes) {
  for (const BoundingBox& box : boxes) {
    const int first_col = ClampIndex(std::ceil(box.min_u - 0.5), pred.width());
    const int last_col = ClampIndex(std::floor(box.max_u - 0.5), pred.width());
    const int first_row = ClampIndex(std::ceil(box.min_v - 0.5), pred.height());
    const int last_row = ClampIndex(std::floor(box.max_v - 0.5), pred.height());
    if (std::max(first_col, 0) > std::min(last_col, pred.width() - 1) ||
        std::max(first_row, 0) > std::min(last_row, pred.height() - 1)) {
      LOG(WARNING) << "skipping box [" << box.min_u << ", " << box.min_v << ", "
                   << box.max_u << ", " << box.max_v
                   << "] that covers no pixel of the image";
      continue;
    }
    std::uint64_t covered = 0;
    std::uint64_t obstacle = 0;
    for (int row = std::max(first_row, 0);
         row <= std::min(last_row, pred.height() - 1); ++row) {
      for (int col = std::max(first_col, 0);
           col <= std::min(last_col, pred.width() - 1); ++col) {
        ++covered;
        if (pred.at(col, row) == LabelClass::kObstacle) ++obstacle;
      }
    }
    const double fraction = static_cast<double>(obstacle) / covered;
    for (GroupRecall* g :
         {&report_.groups[static_cast<int>(box.group)], &report_.all}) {
      g->box_pixels += covered;
      g->obstacle_pixels += obstacle;
      ++g->instances;
      for (std::size_t t = 0; t < report_.thresholds.size(); ++t) {
        if (fraction > report_.thresholds[t]) ++g->detected[t];
      }
    }
  }
}

DetReport BoxRecall(const LabelMask& pred, std::span<const BoundingBox> boxes,
                    std::vector<double> thresholds) {
  BoxRecallAccumulator accumulator(std::move(thresholds));
  accumulator.Add(pred, boxes);
  return accumulator.report();
}

void WriteSegTable(const SegReport& report, std::ostream& out) {
  out << std::left << std::setw(16) << "class" << std::right << std::setw(9)
      << "PRE" << std::setw(9) << "REC" << std::setw(9) << "IoU" << '\n';
  const auto row = [&](std::string_view name, const ClassScores& s) {
    out << std::left << std::setw(16) << name << std::right << std::setw(9)
        << Percent(s.precision) << std::setw(9) << Percent(s.recall)
        << std::setw(9) << Percent(s.iou) << '\n';
  };
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    row(c < kNumLabelClasses ? LabelClassName(static_cast<LabelClass>(c))
                             : std::string_view("class"),
        report.per_class[c]);
  }
  row("all", report.mean);
}

void WriteSegCsv(const SegReport& report, std::string_view scope,
                 std::ostream& out) {
  const auto emit = [&](std::string_view name, const ClassScores& s) {
    out << scope << ',' << name << ",precision," << Format(s.precision) << '\n'
        << scope << ',' << name << ",recall," << Format(s.recall) << '\n'
        << scope << ',' << name << ",iou," << Format(s.iou) << '\n';
  };
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    emit(LabelClassName(static_cast<LabelClass>(c)), report.per_class[c]);
  }
  emit("all", report.mean);
}

void WriteDetTable(const DetReport& report, std::ostream& out) {
  out << std::left << std::setw(26) << "metric" << std::right;
  for (int g = 0; g < kNumObjectGroups; ++g) {
    out << std::setw(9) << ObjectGroupName(static_cast<ObjectGroup>(g));
  }
  out << std::setw(9) << "All" << '\n';
  out << std::left << std::setw(26) << "pixel recall" << std::right;
  for (const GroupRecall& g : report.groups) {
    out << std::setw(9) << Percent(g.PixelRecall());
  }
  out << std::setw(9) << Percent(report.all.PixelRecall()) << '\n';
  for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
    std::ostringstream name;
    name << "instance recall (>" << std::lround(100. * report.thresholds[t])
         << "%)";
    out << std::left << std::setw(26) << name.str() << std::right;
    for (const GroupRecall& g : report.groups) {
      out << std::setw(9) << Percent(g.InstanceRecall(t));
    }
    out << std::setw(9) << Percent(report.all.InstanceRecall(t)) << '\n';
  }
}

void WriteDetCsv(const DetReport& report, std::string_view scope,
                 std::ostream& out) {
  const auto emit = [&](std::string_view name, const GroupRecall& g) {
    out << scope << ',' << name << ",pixel_recall," << Format(g.PixelRecall())
        << '\n';
    for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
      out << scope << ',' << name << ",instance_recall_"
          << std::lround(100. * report.thresholds[t]) << ','
          << Format(g.InstanceRecall(t)) << '\n';
    }
  };
  for (int g = 0; g < kNumObjectGroups; ++g) {
    emit(ObjectGroupName(static_cast<ObjectGroup>(g)), report.groups[g]);
  }
  emit("All", report.all);
}

void WriteEgoLaneCsv(const EgoLaneReport& report, std::string_view scope,
                     std::ostream& out) {
  out << scope << ",ego_lane,max_f," << Format(report.max_f) << '\n'
      << scope << ",ego_lane,ap," << Format(report.average_precision) << '\n'
      << scope << ",ego_lane,precision," << Format(report.precision) << '\n'
      << scope << ",ego_lane,recall," << Format(report.recall) << '\n'
      << scope << ",ego_lane,fpr," << Format(report.false_positive_rate)
      << '\n'
      << scope << ",ego_lane,fnr," << Format(report.false_negative_rate)
      << '\n';
}

}  // namespace pathlabel
