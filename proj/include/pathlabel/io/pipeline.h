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

#ifndef PATHLABEL_IO_PIPELINE_H_
#define PATHLABEL_IO_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pathlabel/io/boxes_io.h"
#include "pathlabel/io/config.h"
#include "pathlabel/io/manifest.h"
#include "pathlabel/metrics.h"

namespace pathlabel::io {

struct LabelRunSummary {
  std::size_t labelled = 0;
  // "<sequence>/<frame>" of frames whose ground plane could not be fitted.
  std::vector<std::string> skipped;
  std::size_t truncated = 0;
};

// Labels every selected frame of every sequence into
// `out/<sequence>/<frame>.png` (plus sidecar). Frames are processed in
// parallel on config.threads workers; each frame's MLESAC seed depends only
// on the global seed and the frame index, so the output does not depend on
// the thread count. If `overlay_dir` is set and the manifest has images, a
// colour overlay is written there under the same relative name.
//
// Frames whose ground fit fails are skipped and reported; any other error
// aborts the run and is rethrown (the earliest frame's error first).
LabelRunSummary LabelDataset(
    const DatasetManifest& manifest, const PipelineConfig& config,
    const std::filesystem::path& out,
    const std::optional<std::filesystem::path>& overlay_dir = std::nullopt);

struct SampledFrame {
  std::string sequence;
  std::size_t frame = 0;
  double timestamp = 0.;
  double yaw_rate = 0.;
};

// Temporal subsampling to config.sample_rate, then yaw-balanced selection of
// `total` frames over all sequences. Yaw rates are averaged over each frame's
// look-ahead window on the full-rate odometry.
std::vector<SampledFrame> SampleDataset(const DatasetManifest& manifest,
                                        const PipelineConfig& config,
                                        std::size_t total);
void WriteSampleCsv(const std::filesystem::path& path,
                    const std::vector<SampledFrame>& frames);

// Pools the confusion of every label under `truth_dir` against the label at
// the same relative path under `pred_dir`. Throws IoError if a prediction is
// missing and ValidationError if `truth_dir` holds no labels.
ConfusionMatrix EvaluateSegmentationDirs(const std::filesystem::path& pred_dir,
                                         const std::filesystem::path& truth_dir,
                                         std::size_t* frames = nullptr);

// Box recall of the labels `pred_dir/<frame_id>.png` against `boxes`.
DetReport EvaluateObstacleDirs(const std::filesystem::path& pred_dir,
                               const BoxTable& boxes,
                               const std::vector<double>& thresholds);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_PIPELINE_H_
