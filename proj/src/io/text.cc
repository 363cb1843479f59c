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

#include "pathlabel/io/text.h"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pathlabel/error.h"

namespace pathlabel::io {

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (true) {
    pos = text.find_first_not_of(" \t\r\n", pos);
    if (pos == std::string_view::npos) break;
    const std::size_t end = text.find_first_of(" \t\r\n", pos);
    tokens.push_back(text.substr(pos, end == std::string_view::npos
                                          ? std::string_view::npos
                                          : end - pos));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return tokens;
}

double ParseDouble(std::string_view token, const std::string& context) {
  double value = 0.;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ParseError(context + ": '" + std::string(token) +
                     "' is not a number");
  }
  return value;
}

std::int64_t ParseInt(std::string_view token, const std::string& context) {
  std::int64_t value = 0;
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ParseError(context + ": '" + std::string(token) +
                     "' is not an integer");
  }
  return value;
}

std::vector<std::size_t> ParseIndexList(std::string_view text,
                                        const std::string& context) {
  std::string normalized(text);
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::vector<std::size_t> indices;
  for (const std::string_view token : SplitWhitespace(normalized)) {
    const std::size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
      const std::int64_t i = ParseInt(token, context);
      if (i < 0) throw ParseError(context + ": negative index");
      indices.push_back(static_cast<std::size_t>(i));
      continue;
    }
    const std::int64_t first = ParseInt(token.substr(0, colon), context);
    const std::int64_t last = ParseInt(token.substr(colon + 1), context);
    if (first < 0 || last < first) {
      throw ParseError(context + ": bad range '" + std::string(token) + "'");
    }
    for (std::int64_t i = first; i < last; ++i) {
      indices.push_back(static_cast<std::size_t>(i));
    }
  }
  return indices;
}

std::string FormatDouble(double value) {
  std::array<char, 32> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

}  // namespace pathlabel::io
