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

#ifndef PATHLABEL_ERROR_H_
#define PATHLABEL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathlabel {

// Every failure raised by the library carries a stable class name so that the
// CLI can print a one-line, machine-parseable error and the Python bindings
// can map it onto a dedicated exception type.
enum class ErrorKind {
  kIndex,
  kBehindCamera,
  kEstimationFailed,
  kShape,
  kParse,
  kValidation,
  kFormat,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& message)
      : Error(ErrorKind::kIndex, message) {}
};

class BehindCameraError : public Error {
 public:
  explicit BehindCameraError(const std::string& message)
      : Error(ErrorKind::kBehindCamera, message) {}
};

class EstimationFailedError : public Error {
 public:
  explicit EstimationFailedError(const std::string& message)
      : Error(ErrorKind::kEstimationFailed, message) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& message)
      : Error(ErrorKind::kShape, message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message)
      : Error(ErrorKind::kParse, message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kValidation, message) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message)
      : Error(ErrorKind::kFormat, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kIo, message) {}
};

}  // namespace pathlabel

#endif  // PATHLABEL_ERROR_H_
