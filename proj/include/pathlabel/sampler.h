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

#ifndef PATHLABEL_SAMPLER_H_
#define PATHLABEL_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathlabel/geometry.h"

namespace pathlabel {

inline constexpr double kDefaultSampleRate = 4.;
inline constexpr int kDefaultYawBins = 20;

// One recorded frame. Timestamps are strictly increasing along a sequence.
struct FrameRecord {
  std::size_t index = 0;
  double timestamp = 0.;
  RigidTransform relative_pose_to_next;
  std::string image_ref;
  std::string cloud_ref;
};

// (1/k) * sum_{i=1..k} YawOf(relatives[start + i - 1]), in radians per frame.
// Throws ValidationError for k == 0 and IndexError past the end.
double MeanYawRate(std::span<const RigidTransform> relatives,
                   std::size_t start, std::size_t k);

// Greedy: the first frame is kept, then every frame at least 1/target_rate
// seconds after the last kept one. Returns indices into `timestamps`.
std::vector<std::size_t> TemporalSubsample(std::span<const double> timestamps,
                                           double target_rate =
                                               kDefaultSampleRate);
std::vector<FrameRecord> TemporalSubsample(std::span<const FrameRecord> frames,
                                           double target_rate =
                                               kDefaultSampleRate);

// Equal-width histogram of signed yaw rates over [-max|rate|, +max|rate|].
struct YawHistogram {
  std::vector<double> bin_edges;  // bin_count + 1 entries
  std::vector<std::size_t> counts;
  // Indices into the rate list used to build the histogram.
  std::vector<std::vector<std::size_t>> members;

  static YawHistogram Build(std::span<const double> yaw_rates, int bin_count);
  std::size_t NonEmptyBins() const;
};

// Draws min(total, yaw_rates.size()) distinct indices so that every
// non-empty histogram bin gets floor(total / non_empty_bins) frames where it
// can; the unfilled quota is then handed out one frame at a time, round-robin
// by bin index, to bins that still have frames. Returns indices sorted
// ascending. Deterministic for a given seed.
std::vector<std::size_t> BalancedSample(std::span<const double> yaw_rates,
                                        int bin_count, std::size_t total,
                                        std::uint64_t seed);

}  // namespace pathlabel

#endif  // PATHLABEL_SAMPLER_H_
