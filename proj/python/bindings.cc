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

// Python bindings. Images are numpy arrays of shape (height, width); label
// masks travel as uint8 arrays plus a (top_rows, bottom_rows) crop.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <array>
#include <string>
#include <vector>

#include "pathlabel/error.h"
#include "pathlabel/geometry.h"
#include "pathlabel/io/cloud_io.h"
#include "pathlabel/io/label_io.h"
#include "pathlabel/io/pose_io.h"
#include "pathlabel/io/synthetic.h"
#include "pathlabel/label_composer.h"
#include "pathlabel/metrics.h"
#include "pathlabel/obstacle_labeler.h"
#include "pathlabel/path_labeler.h"
#include "pathlabel/sampler.h"

namespace py = pybind11;

namespace pathlabel {
namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<std::uint8_t> ToArray(std::span<const std::uint8_t> data, int width,
                                  int height) {
  py::array_t<std::uint8_t> out({height, width});
  std::copy(data.begin(), data.end(), out.mutable_data());
  return out;
}

py::array_t<std::uint8_t> ToArray(const BinaryMask& mask) {
  return ToArray(mask.data(), mask.width(), mask.height());
}

py::array_t<std::uint8_t> ToArray(const LabelMask& mask) {
  return ToArray(mask.data(), mask.width(), mask.height());
}

void CheckImage(const py::buffer_info& info, const char* name) {
  if (info.ndim != 2) {
    throw ShapeError(std::string(name) + " must be a 2-D array");
  }
}

BinaryMask ToBinaryMask(const U8Array& array) {
  const py::buffer_info info = array.request();
  CheckImage(info, "mask");
  BinaryMask mask(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]));
  const std::uint8_t* src = array.data();
  for (std::size_t i = 0; i < mask.size(); ++i) mask.data()[i] = src[i] != 0;
  return mask;
}

LabelMask ToLabelMask(const U8Array& array, std::array<int, 2> crop) {
  const py::buffer_info info = array.request();
  CheckImage(info, "labels");
  return LabelMask::FromRaw(
      static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]),
      CropSpec{crop[0], crop[1]},
      std::span<const std::uint8_t>(array.data(), static_cast<std::size_t>(array.size())));
}

std::vector<Point3> ToPoints(const F64Array& array) {
  const py::buffer_info info = array.request();
  if (info.ndim != 2 || info.shape[1] < 3) {
    throw ShapeError("points must have shape (n, 3) or (n, 4)");
  }
  std::vector<Point3> points;
  const double* src = array.data();
  const std::size_t stride = static_cast<std::size_t>(info.shape[1]);
  for (py::ssize_t i = 0; i < info.shape[0]; ++i) {
    points.emplace_back(src[i * stride], src[i * stride + 1], src[i * stride + 2]);
  }
  return points;
}

PointCloud ToCloud(const F64Array& array) {
  PointCloud cloud;
  cloud.points = ToPoints(array);
  const py::buffer_info info = array.request();
  if (info.shape[1] >= 4) {
    for (py::ssize_t i = 0; i < info.shape[0]; ++i) {
      cloud.intensity.push_back(static_cast<float>(array.data()[i * info.shape[1] + 3]));
    }
  }
  return cloud;
}

py::array_t<double> FromPixels(const std::vector<Pixel>& pixels) {
  py::array_t<double> out({static_cast<py::ssize_t>(pixels.size()), py::ssize_t{2}});
  double* dst = out.mutable_data();
  for (const Pixel& p : pixels) {
    *dst++ = p.u;
    *dst++ = p.v;
  }
  return out;
}

py::dict ScoresDict(const ClassScores& s) {
  py::dict d;
  d["precision"] = s.precision;
  d["recall"] = s.recall;
  d["iou"] = s.iou;
  return d;
}

py::dict SegReportDict(const SegReport& report) {
  py::dict d;
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    d[py::str(std::string(LabelClassName(static_cast<LabelClass>(c))))] =
        ScoresDict(report.per_class[c]);
  }
  d["mean"] = ScoresDict(report.mean);
  return d;
}

py::dict GroupDict(const GroupRecall& g, std::size_t thresholds) {
  py::dict d;
  d["pixel_recall"] = g.PixelRecall();
  d["box_pixels"] = g.box_pixels;
  d["obstacle_pixels"] = g.obstacle_pixels;
  d["instances"] = g.instances;
  py::list recalls;
  for (std::size_t t = 0; t < thresholds; ++t) recalls.append(g.InstanceRecall(t));
  d["instance_recall"] = recalls;
  return d;
}

void RegisterErrors(py::module_& m) {
  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static std::array<py::object, 8> kinds;
  const std::array<std::pair<ErrorKind, const char*>, 8> names = {{
      {ErrorKind::kIndex, "IndexError"},
      {ErrorKind::kBehindCamera, "BehindCameraError"},
      {ErrorKind::kEstimationFailed, "EstimationFailedError"},
      {ErrorKind::kShape, "ShapeError"},
      {ErrorKind::kParse, "ParseError"},
      {ErrorKind::kValidation, "ValidationError"},
      {ErrorKind::kFormat, "FormatError"},
      {ErrorKind::kIo, "IoError"},
  }};
  for (const auto& [kind, name] : names) {
    kinds[static_cast<int>(kind)] =
        py::exception<Error>(m, name, base.ptr());
  }
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(kinds[static_cast<int>(e.kind())].ptr(), e.what());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_pathlabel, m) {
  m.doc() = "Proposed-path and obstacle labelling from odometry and scans.";
  RegisterErrors(m);

  py::class_<RigidTransform>(m, "RigidTransform")
      .def(py::init<>())
      .def(py::init<const Eigen::Matrix3d&, const Eigen::Vector3d&>(),
           py::arg("rotation"), py::arg("translation"))
      .def_static("from_matrix",
                  [](const Eigen::MatrixXd& m) {
                    if (m.cols() != 4 || (m.rows() != 3 && m.rows() != 4)) {
                      throw ShapeError("expected a 3x4 or 4x4 matrix");
                    }
                    return RigidTransform::FromMatrix34(m.topRows<3>());
                  })
      .def_static("from_euler", &RigidTransform::FromEuler, py::arg("yaw"),
                  py::arg("pitch") = 0., py::arg("roll") = 0.,
                  py::arg("translation") = Eigen::Vector3d::Zero())
      .def_static("translation_only", &RigidTransform::Translation)
      .def_property_readonly("rotation", &RigidTransform::rotation)
      .def_property_readonly("translation", &RigidTransform::translation)
      .def("matrix", &RigidTransform::ToMatrix)
      .def("inverse", &RigidTransform::inverse)
      .def("is_valid", &RigidTransform::IsValid, py::arg("tolerance") = 1e-9)
      .def("__mul__", [](const RigidTransform& a, const RigidTransform& b) { return a * b; })
      .def("apply", [](const RigidTransform& g, const F64Array& points) {
        const std::vector<Point3> in = ToPoints(points);
        Eigen::MatrixX3d out(in.size(), 3);
        for (std::size_t i = 0; i < in.size(); ++i) out.row(i) = (g * in[i]).transpose();
        return out;
      });

  m.def("compose_chain",
        [](const std::vector<RigidTransform>& relatives, std::size_t start,
           std::size_t count) { return ComposeChain(relatives, start, count); },
        py::arg("relatives"), py::arg("start"), py::arg("count"));
  m.def("to_euler", [](const Eigen::Matrix3d& r) {
    const EulerAngles e = ToEuler(r);
    return py::make_tuple(e.yaw, e.pitch, e.roll);
  });

  py::class_<CameraModel>(m, "CameraModel")
      .def(py::init<const Eigen::Matrix<double, 3, 4>&, int, int>(),
           py::arg("projection"), py::arg("width"), py::arg("height"))
      .def_static("from_intrinsics", &CameraModel::FromIntrinsics, py::arg("fx"),
                  py::arg("fy"), py::arg("cx"), py::arg("cy"), py::arg("width"),
                  py::arg("height"))
      .def_property_readonly("projection", &CameraModel::projection)
      .def_property_readonly("width", &CameraModel::width)
      .def_property_readonly("height", &CameraModel::height)
      .def("project", [](const CameraModel& camera, const F64Array& points) {
        const std::vector<Point3> in = ToPoints(points);
        py::array_t<double> uv({static_cast<py::ssize_t>(in.size()), py::ssize_t{2}});
        py::array_t<bool> valid(static_cast<py::ssize_t>(in.size()));
        for (std::size_t i = 0; i < in.size(); ++i) {
          const std::optional<Pixel> p = TryProject(camera, in[i]);
          valid.mutable_data()[i] = p.has_value();
          uv.mutable_data()[2 * i] = p ? p->u : std::nan("");
          uv.mutable_data()[2 * i + 1] = p ? p->v : std::nan("");
        }
        return py::make_tuple(uv, valid);
      });

  py::class_<ContactCalibration>(m, "ContactCalibration")
      .def(py::init([](const Eigen::Vector3d& left, const Eigen::Vector3d& right) {
             ContactCalibration c{left, right};
             c.Validate();
             return c;
           }),
           py::arg("left"), py::arg("right"))
      .def_static("from_vehicle", &ContactCalibration::FromVehicle,
                  py::arg("width"), py::arg("height_below"),
                  py::arg("forward") = 0.)
      .def_readonly("left", &ContactCalibration::left)
      .def_readonly("right", &ContactCalibration::right);

  m.def("choose_lookahead",
        [](const std::vector<RigidTransform>& relatives, std::size_t start,
           const ContactCalibration& contact, double min_distance) {
          const Lookahead l = ChooseLookahead(relatives, start, contact, min_distance);
          return py::make_tuple(l.frames, l.truncated, l.distance);
        },
        py::arg("relatives"), py::arg("start"), py::arg("contact"),
        py::arg("min_distance") = kDefaultLookaheadDistance,
        "Returns (frames, truncated, distance).");

  m.def("rasterize_quads",
        [](const F64Array& quads, int width, int height) {
          const py::buffer_info info = quads.request();
          if (info.ndim != 3 || info.shape[1] != 4 || info.shape[2] != 2) {
            throw ShapeError("quads must have shape (n, 4, 2)");
          }
          std::vector<Quad> list(static_cast<std::size_t>(info.shape[0]));
          const double* src = quads.data();
          for (Quad& q : list) {
            for (Pixel& p : q) {
              p.u = *src++;
              p.v = *src++;
            }
          }
          return ToArray(RasterizeQuads(list, width, height));
        },
        py::arg("quads"), py::arg("width"), py::arg("height"));

  m.def("fit_ground_plane",
        [](const F64Array& points, int iterations, double inlier_sigma,
           std::uint64_t seed) {
          MlesacParams params;
          params.iterations = iterations;
          params.inlier_sigma = inlier_sigma;
          params.max_inlier_cost = 3. * inlier_sigma;
          params.random_seed = seed;
          PointCloud cloud;
          cloud.points = ToPoints(points);
          const Plane plane = FitGroundPlane(cloud, params);
          return py::make_tuple(Eigen::Vector3d(plane.normal), plane.offset);
        },
        py::arg("points"), py::arg("iterations") = 200,
        py::arg("inlier_sigma") = 0.05, py::arg("seed") = 0,
        "Returns (unit normal, offset) with normal . x + offset = 0.");

  m.def("stixel_fill",
        [](const F64Array& pixels, int width, int height) {
          const py::buffer_info info = pixels.request();
          if (info.ndim != 2 || info.shape[1] != 2) {
            throw ShapeError("pixels must have shape (n, 2)");
          }
          std::vector<Pixel> list;
          for (py::ssize_t i = 0; i < info.shape[0]; ++i) {
            list.push_back({pixels.data()[2 * i], pixels.data()[2 * i + 1]});
          }
          return ToArray(StixelFill(list, width, height));
        },
        py::arg("pixels"), py::arg("width"), py::arg("height"));

  m.def("compose",
        [](const U8Array& path, const U8Array& obstacle, std::array<int, 2> crop) {
          return ToArray(Compose(ToBinaryMask(path), ToBinaryMask(obstacle),
                                 CropSpec{crop[0], crop[1]}));
        },
        py::arg("path"), py::arg("obstacle"), py::arg("crop") = std::array<int, 2>{0, 0});

  m.def("label_frame",
        [](const std::vector<RigidTransform>& relatives, std::size_t index,
           const F64Array& points, const CameraModel& camera,
           const RigidTransform& camera_from_sensor,
           const ContactCalibration& contact, std::array<int, 2> crop,
           double lookahead_distance, double obstacle_height, std::uint64_t seed,
           bool prefiltered) {
          LabelingParams params;
          params.lookahead_distance = lookahead_distance;
          params.obstacle_height = obstacle_height;
          params.mlesac.random_seed = seed;
          params.sensor_mode =
              prefiltered ? SensorMode::kPrefilteredContours : SensorMode::kRawCloud;
          const LabelResult r = LabelFrame(
              relatives, index, ToCloud(points),
              SensorRig{camera, camera_from_sensor, contact},
              CropSpec{crop[0], crop[1]}, params);
          py::dict info;
          info["lookahead"] = r.lookahead.frames;
          info["truncated"] = r.lookahead.truncated;
          info["quads"] = r.quads;
          info["obstacle_pixels"] = r.obstacle_pixels;
          return py::make_tuple(ToArray(r.mask), info);
        },
        py::arg("relatives"), py::arg("index"), py::arg("points"),
        py::arg("camera"), py::arg("camera_from_sensor"), py::arg("contact"),
        py::arg("crop") = std::array<int, 2>{0, 0},
        py::arg("lookahead_distance") = kDefaultLookaheadDistance,
        py::arg("obstacle_height") = kDefaultObstacleHeight,
        py::arg("seed") = 0, py::arg("prefiltered") = false,
        "Returns (labels, info).");

  m.def("mean_yaw_rate",
        [](const std::vector<RigidTransform>& relatives, std::size_t start,
           std::size_t k) { return MeanYawRate(relatives, start, k); },
        py::arg("relatives"), py::arg("start"), py::arg("k"));
  m.def("temporal_subsample",
        [](const std::vector<double>& timestamps, double rate) {
          return TemporalSubsample(timestamps, rate);
        },
        py::arg("timestamps"), py::arg("target_rate") = kDefaultSampleRate);
  m.def("balanced_sample",
        [](const std::vector<double>& rates, int bins, std::size_t total,
           std::uint64_t seed) { return BalancedSample(rates, bins, total, seed); },
        py::arg("yaw_rates"), py::arg("bins") = kDefaultYawBins,
        py::arg("total"), py::arg("seed") = 0);

  m.def("confusion",
        [](const U8Array& pred, const U8Array& truth, std::array<int, 2> crop) {
          const ConfusionMatrix cm =
              Confusion(ToLabelMask(pred, crop), ToLabelMask(truth, crop));
          Eigen::Matrix<std::uint64_t, 3, 3> out;
          for (int p = 0; p < 3; ++p) {
            for (int a = 0; a < 3; ++a) out(p, a) = cm.count(p, a);
          }
          return out;
        },
        py::arg("pred"), py::arg("truth"), py::arg("crop") = std::array<int, 2>{0, 0},
        "counts[predicted, actual] over non-cropped rows.");
  m.def("seg_report",
        [](const U8Array& pred, const U8Array& truth, std::array<int, 2> crop) {
          return SegReportDict(MakeSegReport(
              Confusion(ToLabelMask(pred, crop), ToLabelMask(truth, crop))));
        },
        py::arg("pred"), py::arg("truth"), py::arg("crop") = std::array<int, 2>{0, 0});
  m.def("maxf_ap",
        [](const F64Array& score, const U8Array& truth, int thresholds) {
          const BinaryMask mask = ToBinaryMask(truth);
          if (static_cast<std::size_t>(score.size()) != mask.size()) {
            throw ShapeError("score and truth differ in size");
          }
          const EgoLaneReport r = MaxFAp(
              std::span<const double>(score.data(), mask.size()), mask, thresholds);
          py::dict d;
          d["max_f"] = r.max_f;
          d["average_precision"] = r.average_precision;
          d["threshold"] = r.threshold;
          d["precision"] = r.precision;
          d["recall"] = r.recall;
          return d;
        },
        py::arg("score"), py::arg("truth"),
        py::arg("thresholds") = kDefaultThresholdCount);
  m.def("box_recall",
        [](const U8Array& labels, const std::vector<std::tuple<std::string, double, double, double, double>>& boxes,
           std::vector<double> thresholds) {
          std::vector<BoundingBox> list;
          for (const auto& [group, u0, v0, u1, v1] : boxes) {
            list.push_back({u0, v0, u1, v1, GroupForClass(group)});
          }
          const DetReport r = BoxRecall(ToLabelMask(labels, {0, 0}), list, thresholds);
          py::dict d;
          for (int g = 0; g < kNumObjectGroups; ++g) {
            d[py::str(std::string(ObjectGroupName(static_cast<ObjectGroup>(g))))] =
                GroupDict(r.groups[g], r.thresholds.size());
          }
          d["All"] = GroupDict(r.all, r.thresholds.size());
          return d;
        },
        py::arg("labels"), py::arg("boxes"),
        py::arg("thresholds") = kDefaultInstanceThresholds,
        "boxes: (class, min_u, min_v, max_u, max_v) tuples.");

  m.def("read_poses",
        [](const std::filesystem::path& path, bool absolute) {
          return io::ReadPoses(path, absolute ? io::PoseConvention::kAbsolute
                                              : io::PoseConvention::kRelative);
        },
        py::arg("path"), py::arg("absolute") = false);
  m.def("write_poses",
        [](const std::filesystem::path& path, const std::vector<RigidTransform>& poses) {
          io::WritePoses(path, poses);
        },
        py::arg("path"), py::arg("poses"));
  m.def("read_cloud", [](const std::filesystem::path& path) {
    const PointCloud cloud = io::ReadCloud(path);
    py::array_t<float> out({static_cast<py::ssize_t>(cloud.size()), py::ssize_t{4}});
    float* dst = out.mutable_data();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      for (int k = 0; k < 3; ++k) *dst++ = static_cast<float>(cloud.points[i][k]);
      *dst++ = cloud.intensity[i];
    }
    return out;
  });
  m.def("write_cloud",
        [](const std::filesystem::path& path, const F64Array& points) {
          io::WriteCloud(path, ToCloud(points));
        },
        py::arg("path"), py::arg("points"));
  m.def("read_label", [](const std::filesystem::path& path) {
    const LabelMask mask = io::ReadLabel(path);
    return py::make_tuple(ToArray(mask),
                          py::make_tuple(mask.crop().top_rows, mask.crop().bottom_rows));
  }, "Returns (labels, (crop_top_rows, crop_bottom_rows)).");
  m.def("write_label",
        [](const std::filesystem::path& path, const U8Array& labels,
           std::array<int, 2> crop) {
          io::WriteLabel(path, ToLabelMask(labels, crop));
        },
        py::arg("path"), py::arg("labels"), py::arg("crop") = std::array<int, 2>{0, 0});

  m.def("synthesize",
        [](const std::filesystem::path& scene_file,
           const std::optional<std::filesystem::path>& out) {
          const io::SyntheticScene scene = io::SyntheticScene::Load(scene_file);
          const io::SyntheticData data = io::GenerateSynthetic(scene);
          if (out) io::WriteSynthetic(scene, data, *out);
          py::dict truths;
          for (const io::SyntheticFrame& f : data.frames) {
            truths[py::int_(f.index)] = ToArray(f.truth);
          }
          return py::make_tuple(data.relatives, truths);
        },
        py::arg("scene_file"), py::arg("out") = py::none(),
        "Returns (relative poses, {frame: analytic labels}).");
}

}  // namespace pathlabel
