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

#include "pathlabel/io/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <thread>

#include "glog/logging.h"
#include "pathlabel/error.h"
#include "pathlabel/io/cloud_io.h"
#include "pathlabel/io/label_io.h"
#include "pathlabel/io/text.h"
#include "pathlabel/path_labeler.h"
#include "pathlabel/sampler.h"

namespace pathlabel::io {

namespace {

namespace fs = std::filesystem;

struct FrameTask {
  const Sequence* sequence;
  std::size_t frame;
};

enum class TaskOutcome { kLabelled, kTruncated, kSkipped };

int WorkerCount(int requested, std::size_t tasks) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

// Runs fn(i) for i in [0, count) on `workers` threads. Exceptions are kept
// per index and the lowest-index one is rethrown after all work is done.
template <typename Fn>
void ParallelFor(std::size_t count, int workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    for (int w = 1; w < workers; ++w) threads.emplace_back(work);
    work();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<fs::path> FindLabels(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError(dir.string() + ": not a directory");
  }
  std::vector<fs::path> labels;
  for (const fs::directory_entry& entry :
       fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      labels.push_back(fs::relative(entry.path(), dir));
    }
  }
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

LabelRunSummary LabelDataset(const DatasetManifest& manifest,
                             const PipelineConfig& config, const fs::path& out,
                             const std::optional<fs::path>& overlay_dir) {
  const ContactCalibration contact = config.Contact();
  const CropSpec crop = config.Crop(manifest.image_height);

  std::vector<Sequence> sequences;
  for (const SequencePaths& paths : manifest.sequences) {
    sequences.push_back(LoadSequence(manifest, paths, contact));
  }
  std::vector<FrameTask> tasks;
  for (const Sequence& seq : sequences) {
    if (manifest.frames) {
      for (const std::size_t f : *manifest.frames) {
        if (f >= seq.frame_count()) {
          throw IndexError(manifest.source.string() + ": frame " +
                           std::to_string(f) + " is past the end of sequence '" +
                           seq.paths.name + "' (" +
                           std::to_string(seq.frame_count()) + " frames)");
        }
        tasks.push_back({&seq, f});
      }
    } else {
      for (std::size_t f = 0; f < seq.frame_count(); ++f) {
        tasks.push_back({&seq, f});
      }
    }
    fs::create_directories(out / seq.paths.name);
    if (overlay_dir && seq.paths.images) {
      fs::create_directories(*overlay_dir / seq.paths.name);
    }
  }

  const KeyValueConfig effective = config.ToKeyValue();
  LabelProvenance base;
  for (const auto& [key, value] : effective.entries()) {
    // The worker count does not change the labels.
    if (key == "threads") continue;
    base.params.emplace_back(key, value);
  }

  std::vector<TaskOutcome> outcomes(tasks.size(), TaskOutcome::kLabelled);
  ParallelFor(tasks.size(), WorkerCount(config.threads, tasks.size()),
              [&](std::size_t i) {
    const Sequence& seq = *tasks[i].sequence;
    const std::size_t frame = tasks[i].frame;
    const fs::path cloud_path = seq.CloudPath(frame);
    const PointCloud cloud = ReadCloud(cloud_path);
    LabelResult result;
    try {
      result = LabelFrame(seq.relatives, frame, cloud, seq.rig, crop,
                          config.labeling);
    } catch (const EstimationFailedError& e) {
      LOG(WARNING) << cloud_path.string() << ": skipped, " << e.what();
      outcomes[i] = TaskOutcome::kSkipped;
      return;
    }
    if (result.lookahead.truncated) outcomes[i] = TaskOutcome::kTruncated;
    LabelProvenance provenance = base;
    provenance.source = cloud_path.string();
    provenance.frame = frame;
    if (config.labeling.sensor_mode == SensorMode::kRawCloud) {
      provenance.seed = FrameSeed(config.labeling.mlesac.random_seed, frame);
    }
    const fs::path name = fs::path(seq.paths.name) / (FrameName(frame) + ".png");
    WriteLabel(out / name, result.mask, provenance);
    if (overlay_dir) {
      if (const std::optional<fs::path> image = seq.ImagePath(frame)) {
        WriteOverlay(*image, result.mask, *overlay_dir / name);
      }
    }
  });

  LabelRunSummary summary;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    switch (outcomes[i]) {
      case TaskOutcome::kSkipped:
        summary.skipped.push_back(
            (fs::path(tasks[i].sequence->paths.name) / FrameName(tasks[i].frame))
                .string());
        break;
      case TaskOutcome::kTruncated:
        ++summary.truncated;
        ++summary.labelled;
        break;
      case TaskOutcome::kLabelled:
        ++summary.labelled;
        break;
    }
  }
  return summary;
}

std::vector<SampledFrame> SampleDataset(const DatasetManifest& manifest,
                                        const PipelineConfig& config,
                                        std::size_t total) {
  const ContactCalibration contact = config.Contact();
  std::vector<SampledFrame> candidates;
  for (const SequencePaths& paths : manifest.sequences) {
    const Sequence seq = LoadSequence(manifest, paths, contact);
    for (const std::size_t frame :
         TemporalSubsample(seq.timestamps, config.sample_rate)) {
      const Lookahead lookahead =
          ChooseLookahead(seq.relatives, frame, contact,
                          config.labeling.lookahead_distance);
      if (lookahead.frames == 0) continue;
      candidates.push_back({paths.name, frame, seq.timestamps[frame],
                            MeanYawRate(seq.relatives, frame, lookahead.frames)});
    }
  }
  std::vector<double> rates;
  for (const SampledFrame& c : candidates) rates.push_back(c.yaw_rate);
  std::vector<SampledFrame> selected;
  if (rates.empty()) return selected;
  for (const std::size_t i :
       BalancedSample(rates, config.yaw_bins, total, config.sample_seed)) {
    selected.push_back(candidates[i]);
  }
  return selected;
}

void WriteSampleCsv(const fs::path& path,
                    const std::vector<SampledFrame>& frames) {
  std::string text = "sequence,frame,timestamp,yaw_rate\n";
  for (const SampledFrame& f : frames) {
    text += f.sequence + "," + FrameName(f.frame) + "," +
            FormatDouble(f.timestamp) + "," + FormatDouble(f.yaw_rate) + "\n";
  }
  WriteTextFile(path, text);
}

ConfusionMatrix EvaluateSegmentationDirs(const fs::path& pred_dir,
                                         const fs::path& truth_dir,
                                         std::size_t* frames) {
  const std::vector<fs::path> labels = FindLabels(truth_dir);
  if (labels.empty()) {
    throw ValidationError(truth_dir.string() + ": no label images found");
  }
  ConfusionMatrix total;
  for (const fs::path& name : labels) {
    const fs::path pred = pred_dir / name;
    if (!fs::exists(pred)) {
      throw IoError(pred.string() + ": missing prediction for " +
                    (truth_dir / name).string());
    }
    total.Merge(Confusion(ReadLabel(pred), ReadLabel(truth_dir / name)));
  }
  if (frames != nullptr) *frames = labels.size();
  return total;
}

DetReport EvaluateObstacleDirs(const fs::path& pred_dir, const BoxTable& boxes,
                               const std::vector<double>& thresholds) {
  BoxRecallAccumulator acc(thresholds);
  for (const auto& [frame, list] : boxes) {
    const fs::path pred = pred_dir / (frame + ".png");
    if (!fs::exists(pred)) {
      throw IoError(pred.string() + ": missing prediction for boxes of frame " +
                    frame);
    }
    acc.Add(ReadLabel(pred), list);
  }
  return acc.report();
}

}  // namespace pathlabel::io
