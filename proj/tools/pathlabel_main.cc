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

// Command-line front end: label, sample, eval-seg, eval-obj and synth.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glog/logging.h"
#include "pathlabel/error.h"
#include "pathlabel/io/boxes_io.h"
#include "pathlabel/io/config.h"
#include "pathlabel/io/manifest.h"
#include "pathlabel/io/pipeline.h"
#include "pathlabel/io/synthetic.h"
#include "pathlabel/metrics.h"

namespace pathlabel {
namespace {

namespace fs = std::filesystem;

constexpr int kUsageExitCode = 2;

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIndex:
      return 3;
    case ErrorKind::kBehindCamera:
      return 4;
    case ErrorKind::kEstimationFailed:
      return 5;
    case ErrorKind::kShape:
      return 6;
    case ErrorKind::kParse:
      return 7;
    case ErrorKind::kValidation:
      return 8;
    case ErrorKind::kFormat:
      return 9;
    case ErrorKind::kIo:
      return 10;
  }
  return 1;
}

int Fail(std::string_view error_class, std::string message, int code) {
  for (char& c : message) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "error: " << error_class << ": " << message << std::endl;
  return code;
}

// Configuration layers, lowest precedence first: built-in defaults (or the
// manifest's profile and vehicle file), --config, then per-key flags.
struct ConfigLayers {
  std::string config_file;
  std::map<std::string, std::string> flags;

  io::PipelineConfig Resolve(io::PipelineConfig base) const {
    if (!config_file.empty()) {
      base.Apply(io::KeyValueConfig::Load(config_file));
    }
    io::KeyValueConfig overrides = io::KeyValueConfig::Parse("", "command line");
    for (const auto& [key, value] : flags) overrides.Set(key, value);
    base.Apply(overrides);
    return base;
  }
};

// Writes to `path`, or stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError(path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int Run(int argc, char** argv) {
  CLI::App app{"Weakly supervised proposed-path and obstacle labelling."};
  app.require_subcommand(0, 1);
  app.fallthrough();

  ConfigLayers layers;
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config,
               "Print the effective configuration and exit");
  app.add_option("--config", layers.config_file, "key = value config file");
  for (const std::string_view key : io::PipelineConfig::Keys()) {
    const std::string name(key);
    app.add_option_function<std::string>(
        "--" + name,
        [&layers, name](const std::string& value) { layers.flags[name] = value; },
        "Override config key " + name);
  }

  std::string manifest_path;
  std::string out_path;
  std::string overlay_dir;
  CLI::App* label = app.add_subcommand("label", "Label every manifest frame");
  label->add_option("manifest", manifest_path)->required();
  label->add_option("out", out_path, "Output directory")->required();
  label->add_option("--overlay-dir", overlay_dir,
                    "Also write colour overlays onto the source images");

  std::size_t total = 0;
  CLI::App* sample =
      app.add_subcommand("sample", "Select a yaw-balanced training subset");
  sample->add_option("manifest", manifest_path)->required();
  sample->add_option("out", out_path, "Output CSV file")->required();
  sample->add_option("--total", total, "Number of frames to select")
      ->required()
      ->check(CLI::PositiveNumber);

  std::string pred_dir;
  std::string truth_dir;
  std::string report_path;
  CLI::App* eval_seg =
      app.add_subcommand("eval-seg", "Per-class precision, recall and IoU");
  eval_seg->add_option("pred-dir", pred_dir)->required();
  eval_seg->add_option("truth-dir", truth_dir)->required();
  eval_seg->add_option("--output", report_path, "Write the CSV report here");

  std::string boxes_path;
  CLI::App* eval_obj =
      app.add_subcommand("eval-obj", "Obstacle recall inside object boxes");
  eval_obj->add_option("pred-dir", pred_dir)->required();
  eval_obj->add_option("boxes-file", boxes_path)->required();
  eval_obj->add_option("--output", report_path, "Write the CSV report here");

  std::string scene_path;
  CLI::App* synth =
      app.add_subcommand("synth", "Render a synthetic scene with exact labels");
  synth->add_option("scene-file", scene_path)->required();
  synth->add_option("out", out_path, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return Fail("UsageError", e.what(), kUsageExitCode);
  }

  if (dump_config) {
    io::PipelineConfig base;
    if (!manifest_path.empty()) {
      base = io::DatasetManifest::Load(manifest_path).LoadPipelineConfig();
    }
    std::cout << layers.Resolve(base).Dump();
    return 0;
  }

  if (*label) {
    const io::DatasetManifest manifest = io::DatasetManifest::Load(manifest_path);
    const io::PipelineConfig config =
        layers.Resolve(manifest.LoadPipelineConfig());
    const io::LabelRunSummary summary = io::LabelDataset(
        manifest, config, out_path,
        overlay_dir.empty() ? std::nullopt
                            : std::optional<fs::path>(overlay_dir));
    std::cout << "labelled " << summary.labelled << " frames ("
              << summary.truncated << " with truncated look-ahead), skipped "
              << summary.skipped.size() << '\n';
    for (const std::string& frame : summary.skipped) {
      std::cout << "skipped " << frame << '\n';
    }
    return 0;
  }

  if (*sample) {
    const io::DatasetManifest manifest = io::DatasetManifest::Load(manifest_path);
    const io::PipelineConfig config =
        layers.Resolve(manifest.LoadPipelineConfig());
    const std::vector<io::SampledFrame> frames =
        io::SampleDataset(manifest, config, total);
    io::WriteSampleCsv(out_path, frames);
    std::cout << "selected " << frames.size() << " frames\n";
    return 0;
  }

  if (*eval_seg) {
    std::size_t frames = 0;
    const ConfusionMatrix cm =
        io::EvaluateSegmentationDirs(pred_dir, truth_dir, &frames);
    Output output(report_path);
    output.stream() << "scope,class,metric,value\n";
    WriteSegCsv(MakeSegReport(cm), "all", output.stream());
    LOG(INFO) << "evaluated " << frames << " frames";
    return 0;
  }

  if (*eval_obj) {
    const io::PipelineConfig config = layers.Resolve({});
    const DetReport report = io::EvaluateObstacleDirs(
        pred_dir, io::ReadBoxes(boxes_path), config.instance_thresholds);
    Output output(report_path);
    output.stream() << "scope,group,metric,value\n";
    WriteDetCsv(report, "all", output.stream());
    return 0;
  }

  if (*synth) {
    const io::SyntheticScene scene = io::SyntheticScene::Load(scene_path);
    const io::SyntheticData data = io::GenerateSynthetic(scene);
    io::WriteSynthetic(scene, data, out_path);
    std::cout << "wrote " << data.frames.size() << " labelled frames of "
              << scene.frame_count() << " to " << out_path << '\n';
    return 0;
  }

  std::cout << app.help();
  return 0;
}

}  // namespace
}  // namespace pathlabel

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  FLAGS_minloglevel = google::GLOG_WARNING;
  try {
    return pathlabel::Run(argc, argv);
  } catch (const pathlabel::Error& e) {
    return pathlabel::Fail(pathlabel::ErrorKindName(e.kind()), e.what(),
                           pathlabel::ExitCode(e.kind()));
  } catch (const std::exception& e) {
    return pathlabel::Fail("InternalError", e.what(), 1);
  }
}
