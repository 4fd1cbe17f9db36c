// Copyright 2026 The retina-prep Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace retina {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed encoded image. `offset()` is the byte position where parsing
/// stopped making sense.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed input we deliberately do not handle (alpha channels, ...).
class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

/// Raw tensor / config file that does not follow its documented layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Channel count, dimensions or depth do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Sample values outside the declared value domain, or an operation applied
/// to the wrong domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Class id outside [0, num_classes) on a non-ignored pixel.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Metrics requested before any pixel was accumulated.
class EmptyEvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace retina
