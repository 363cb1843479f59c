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

#include "pathlabel/error.h"

namespace pathlabel {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIndex:
      return "IndexError";
    case ErrorKind::kBehindCamera:
      return "BehindCamera";
    case ErrorKind::kEstimationFailed:
      return "EstimationFailed";
    case ErrorKind::kShape:
      return "ShapeError";
    case ErrorKind::kParse:
      return "ParseError";
    case ErrorKind::kValidation:
      return "ValidationError";
    case ErrorKind::kFormat:
      return "FormatError";
    case ErrorKind::kIo:
      return "IoError";
  }
  return "Error";
}

}  // namespace pathlabel
