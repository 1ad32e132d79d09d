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

#include "ew/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ew/error.hpp"

namespace ew {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-params";
    case ErrorKind::kUnknownLabel: return "unknown-label";
    case ErrorKind::kParseError: return "parse-error";
    case ErrorKind::kSchemaViolation: return "schema-violation";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kUnsupportedFormat: return "unsupported-format";
    case ErrorKind::kBackendUnavailable: return "backend-unavailable";
    case ErrorKind::kProtocolError: return "protocol-error";
    case ErrorKind::kIoError: return "io-error";
  }
  return "unknown";
}

bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBackendUnavailable:
    case ErrorKind::kProtocolError:
    case ErrorKind::kIoError:
      return false;
    default:
      return true;
  }
}

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::kNone: return "none";
    case ClassLabel::kCardboard: return "cardboard";
    case ClassLabel::kGlass: return "glass";
    case ClassLabel::kMetal: return "metal";
    case ClassLabel::kPaper: return "paper";
    case ClassLabel::kPlastic: return "plastic";
  }
  return "none";
}

ClassLabel parse_label(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (ClassLabel c : kCategories) {
    if (lower == to_string(c)) return c;
  }
  throw Error(ErrorKind::kUnknownLabel,
              "unknown label '" + std::string(text) + "'");
}

std::size_t category_index(ClassLabel label) {
  if (label == ClassLabel::kNone) {
    throw Error(ErrorKind::kInvalidArgument, "'none' has no category index");
  }
  return static_cast<std::size_t>(label) - 1;
}

double to_seconds(Timestamp t) { return static_cast<double>(t.count()) / 1e9; }

Timestamp from_seconds(double seconds) {
  return Timestamp{std::llround(seconds * 1e9)};
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> pixels,
             Timestamp captured_at, double capture_duration_s)
    : width_(width),
      height_(height),
      pixels_(std::move(pixels)),
      captured_at_(captured_at),
      capture_duration_s_(capture_duration_s) {
  if (width_ < 1 || height_ < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "frame dimensions must be positive, got " +
                    std::to_string(width_) + "x" + std::to_string(height_));
  }
  const auto expected = static_cast<std::size_t>(width_) *
                        static_cast<std::size_t>(height_) * 3;
  if (pixels_.size() != expected) {
    throw Error(ErrorKind::kInvalidArgument,
                "pixel buffer holds " + std::to_string(pixels_.size()) +
                    " bytes, expected " + std::to_string(expected));
  }
  if (capture_duration_s_ < 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "negative capture duration");
  }
}

Frame Frame::with_capture(Timestamp captured_at,
                          double capture_duration_s) const {
  Frame copy = *this;
  copy.captured_at_ = captured_at;
  copy.capture_duration_s_ = capture_duration_s;
  return copy;
}

void validate(const Classification& c) {
  if (c.label == ClassLabel::kNone) {
    throw Error(ErrorKind::kInvalidArgument,
                "classification label must be a real category");
  }
  if (!(c.confidence >= 0.0 && c.confidence <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "confidence " + std::to_string(c.confidence) +
                    " outside [0,1]");
  }
  if (!(c.inference_duration_s > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "inference duration must be positive");
  }
}

std::string_view to_string(Precision p) {
  return p == Precision::kFp16 ? "fp16" : "fp32";
}

Precision parse_precision(std::string_view text) {
  if (text == "fp32") return Precision::kFp32;
  if (text == "fp16") return Precision::kFp16;
  throw Error(ErrorKind::kSchemaViolation,
              "precision must be fp32 or fp16, got '" + std::string(text) +
                  "'");
}

void validate(const AccelConfig& accel) {
  if (accel.max_batch < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_batch must be >= 1");
  }
  if (accel.max_workspace_bytes <= 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "max_workspace_bytes must be positive");
  }
  if (!(accel.resolution_scale > 0.0 && accel.resolution_scale <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "resolution_scale must lie in (0, 1]");
  }
}

}  // namespace ew
