// Copyright 2026 The Lithoforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace litho {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Decoding / encoding
class MalformedFile : public Error {
 public:
  using Error::Error;
};
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};
class ZeroDimension : public Error {
 public:
  using Error::Error;
};

// Parameter validation
class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

// Relief construction
class ImageTooSmall : public Error {
 public:
  using Error::Error;
};
class ResultTooSmall : public Error {
 public:
  using Error::Error;
};

// Meshing / serialization
class NotWatertight : public Error {
 public:
  using Error::Error;
};
class BudgetTooSmall : public Error {
 public:
  using Error::Error;
};
class TooManyTriangles : public Error {
 public:
  using Error::Error;
};
class MalformedStl : public Error {
 public:
  using Error::Error;
};
class AsciiDetected : public Error {
 public:
  using Error::Error;
};
class IoFailure : public Error {
 public:
  using Error::Error;
};

// Layout composition
class MixedBaseHeights : public Error {
 public:
  using Error::Error;
};
class CalibrationMissing : public Error {
 public:
  using Error::Error;
};
class EmptyLayout : public Error {
 public:
  using Error::Error;
};

// Configuration / CLI
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace litho
