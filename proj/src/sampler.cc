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

#include "pathlabel/sampler.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "glog/logging.h"
#include "pathlabel/error.h"

namespace pathlabel {

double MeanYawRate(std::span<const RigidTransform> relatives,
                   std::size_t start, std::size_t k) {
  if (k == 0) throw ValidationError("mean yaw rate needs k >= 1");
  if (start > relatives.size() || k > relatives.size() - start) {
    throw IndexError("yaw window [" + std::to_string(start) + ", " +
                     std::to_string(start + k) + ") exceeds " +
                     std::to_string(relatives.size()) + " relative poses");
  }
  double sum = 0.;
  for (std::size_t i = 1; i <= k; ++i) sum += YawOf(relatives[start + i - 1]);
  return sum / static_cast<double>(k);
}

std::vector<std::size_t> TemporalSubsample(std::span<const double> timestamps,
                                           double target_rate) {
  if (!(target_rate > 0.)) {
    throw ValidationError("target rate must be positive");
  }
  std::vector<std::size_t> kept;
  if (timestamps.empty()) return kept;
  const double period = 1. / target_rate;
  kept.push_back(0);
  double last = timestamps[0];
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    // The tolerance absorbs timestamp rounding on uniform streams.
    if (timestamps[i] - last >= period - 1e-9) {
      kept.push_back(i);
      last = timestamps[i];
    }
  }
  return kept;
}

std::vector<FrameRecord> TemporalSubsample(std::span<const FrameRecord> frames,
                                           double target_rate) {
  std::vector<double> timestamps;
  timestamps.reserve(frames.size());
  for (const FrameRecord& f : frames) timestamps.push_back(f.timestamp);
  std::vector<FrameRecord> kept;
  for (const std::size_t i : TemporalSubsample(timestamps, target_rate)) {
    kept.push_back(frames[i]);
  }
  return kept;
}

YawHistogram YawHistogram::Build(std::span<const double> yaw_rates,
                                 int bin_count) {
  if (bin_count < 1) throw ValidationError("histogram needs >= 1 bin");
  double extent = 0.;
  for (const double r : yaw_rates) {
    if (!std::isfinite(r)) throw ValidationError("yaw rate is not finite");
    extent = std::max(extent, std::abs(r));
  }
  YawHistogram histogram;
  histogram.counts.assign(bin_count, 0);
  histogram.members.resize(bin_count);
  if (extent == 0.) {
    // Degenerate range: all rates are zero. Keep strictly increasing edges.
    extent = 1.;
  }
  for (int i = 0; i <= bin_count; ++i) {
    histogram.bin_edges.push_back(-extent + 2. * extent * i / bin_count);
  }
  for (std::size_t i = 0; i < yaw_rates.size(); ++i) {
    const double t = (yaw_rates[i] + extent) / (2. * extent);
    const int bin =
        std::clamp(static_cast<int>(std::floor(t * bin_count)), 0, bin_count - 1);
    histogram.members[bin].push_back(i);
    ++histogram.counts[bin];
  }
  return histogram;
}

std::size_t YawHistogram::NonEmptyBins() const {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(),
                    [](std::size_t c) { return c > 0; }));
}

std::vector<std::size_t> BalancedSample(std::span<const double> yaw_rates,
                                        int bin_count, std::size_t total,
                                        std::uint64_t seed) {
  if (total < 1) throw ValidationError("sample total must be >= 1");
  YawHistogram histogram = YawHistogram::Build(yaw_rates, bin_count);
  if (total >= yaw_rates.size()) {
    if (total > yaw_rates.size()) {
      LOG(WARNING) << "requested " << total << " frames but only "
                   << yaw_rates.size() << " are available; keeping all";
    }
    std::vector<std::size_t> all(yaw_rates.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }

  std::mt19937_64 rng(seed);
  for (std::vector<std::size_t>& members : histogram.members) {
    std::shuffle(members.begin(), members.end(), rng);
  }
  const std::size_t quota = total / histogram.NonEmptyBins();
  std::vector<std::size_t> taken(bin_count, 0);
  std::size_t selected = 0;
  for (int bin = 0; bin < bin_count; ++bin) {
    taken[bin] = std::min(quota, histogram.members[bin].size());
    selected += taken[bin];
  }
  // Terminates: total < number of frames, so some bin always has spare frames.
  while (selected < total) {
    for (int bin = 0; bin < bin_count && selected < total; ++bin) {
      if (taken[bin] < histogram.members[bin].size()) {
        ++taken[bin];
        ++selected;
      }
    }
  }

  std::vector<std::size_t> result;
  result.reserve(total);
  for (int bin = 0; bin < bin_count; ++bin) {
    result.insert(result.end(), histogram.members[bin].begin(),
                  histogram.members[bin].begin() + taken[bin]);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace pathlabel
