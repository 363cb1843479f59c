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

#ifndef PATHLABEL_IO_TEXT_H_
#define PATHLABEL_IO_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pathlabel::io {

// Throws IoError if the file cannot be read.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

std::vector<std::string_view> SplitWhitespace(std::string_view text);

// Strict full-token parses; `context` prefixes the ParseError message.
double ParseDouble(std::string_view token, const std::string& context);
std::int64_t ParseInt(std::string_view token, const std::string& context);

// Comma or whitespace separated indices; `a:b` expands to a, ..., b - 1.
std::vector<std::size_t> ParseIndexList(std::string_view text,
                                        const std::string& context);

// Shortest representation that round-trips.
std::string FormatDouble(double value);

}  // namespace pathlabel::io

#endif  // PATHLABEL_IO_TEXT_H_
