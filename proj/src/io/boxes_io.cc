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

#include "pathlabel/io/boxes_io.h"

#include <cmath>
#include <string>

#include "pathlabel/error.h"
#include "pathlabel/io/text.h"

namespace pathlabel::io {

BoxTable ReadBoxes(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  BoxTable table;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_number;
    const std::string_view line = std::string_view(text).substr(pos, end - pos);
    pos = end + 1;
    const std::vector<std::string_view> tokens = SplitWhitespace(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    if (tokens.size() != 6) {
      throw ParseError(where + ": expected 6 fields, found " +
                       std::to_string(tokens.size()));
    }
    BoundingBox box;
    box.group = GroupForClass(tokens[1]);
    box.min_u = ParseDouble(tokens[2], where);
    box.min_v = ParseDouble(tokens[3], where);
    box.max_u = ParseDouble(tokens[4], where);
    box.max_v = ParseDouble(tokens[5], where);
    if (!std::isfinite(box.min_u) || !std::isfinite(box.min_v) ||
        !std::isfinite(box.max_u) || !std::isfinite(box.max_v) ||
        box.min_u > box.max_u || box.min_v > box.max_v) {
      throw ValidationError(where + ": box corners are inverted or not finite");
    }
    table[std::string(tokens[0])].push_back(box);
  }
  return table;
}

void WriteBoxes(const std::filesystem::path& path, const BoxTable& boxes) {
  std::string text;
  for (const auto& [frame, list] : boxes) {
    for (const BoundingBox& box : list) {
      text += frame + " " + std::string(ObjectGroupName(box.group)) + " " +
              FormatDouble(box.min_u) + " " + FormatDouble(box.min_v) + " " +
              FormatDouble(box.max_u) + " " + FormatDouble(box.max_v) + "\n";
    }
  }
  WriteTextFile(path, text);
}

}  // namespace pathlabel::io
