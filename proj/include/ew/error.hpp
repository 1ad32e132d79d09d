/* Copyright 2026 The ewbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ew {

enum class ErrorKind {
  kInvalidArgument,
  kUnknownLabel,
  kParseError,
  kSchemaViolation,
  kDimensionMismatch,
  kUnsupportedFormat,
  kBackendUnavailable,
  kProtocolError,
  kIoError,
};

std::string_view to_string(ErrorKind kind);

// Validation failures are caller mistakes (bad flags, bad files); everything
// else is a runtime failure of an otherwise valid request.
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ew
