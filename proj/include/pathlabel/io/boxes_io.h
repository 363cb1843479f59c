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

#ifndef PATHLABEL_IO_BOXES_IO_H_
#define PATHLABEL_IO_BOXES_IO_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pathlabel/metrics.h"

namespace pathlabel::io {

// Frame id -> boxes, in file order within a frame.
using BoxTable = std::map<std::string, std::vector<BoundingBox>>;

// One box per line: `frame_id group min_u min_v max_u max_v`, where `group`
// is an object class or group name (see GroupForClass()). Blank lines and
// lines starting with '#' are skipped. Throws ParseError naming the line for
// malformed records and ValidationError for inverted or non-finite boxes.
BoxTable ReadBoxes(const std::filesystem::path& path);
void WriteBoxes(const std::filesystem::path& path, const BoxTable& boxes);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_BOXES_IO_H_
