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

#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ew {

/// Recycling category. `kNone` is only ever held by a debounce queue that has
/// not committed to a state yet; classifiers never emit it.
enum class ClassLabel : std::uint8_t {
  kNone = 0,
  kCardboard,
  kGlass,
  kMetal,
  kPaper,
  kPlastic,
};

inline constexpr std::array<ClassLabel, 5> kCategories = {
    ClassLabel::kCardboard, ClassLabel::kGlass, ClassLabel::kMetal,
    ClassLabel::kPaper, ClassLabel::kPlastic};

inline constexpr std::size_t kNumCategories = kCategories.size();

/// Lowercase wire name; "none" for `kNone`.
std::string_view to_string(ClassLabel label);

/// Case-insensitive parse of one of the five category names. Throws
/// Error(kUnknownLabel) for anything else, including "none".
ClassLabel parse_label(std::string_view text);

/// Dense 0..4 index of a real category.
std::size_t category_index(ClassLabel label);

/// Monotonic time since an arbitrary clock origin.
using Timestamp = std::chrono::nanoseconds;

double to_seconds(Timestamp t);
Timestamp from_seconds(double seconds);

/// Row-major RGB8 image plus capture metadata. Immutable once constructed.
class Frame {
 public:
  /// Throws Error(kInvalidArgument) unless width, height >= 1 and
  /// pixels.size() == width * height * 3.
  Frame(int width, int height, std::vector<std::uint8_t> pixels,
        Timestamp captured_at = Timestamp{0}, double capture_duration_s = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }
  Timestamp captured_at() const { return captured_at_; }
  double capture_duration_s() const { return capture_duration_s_; }

  Frame with_capture(Timestamp captured_at, double capture_duration_s) const;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
  Timestamp captured_at_;
  double capture_duration_s_;
};

struct Classification {
  ClassLabel label = ClassLabel::kCardboard;
  double confidence = 1.0;
  double inference_duration_s = 0.0;
  Timestamp frame_ts{0};
};

/// Throws Error(kInvalidArgument) when the label is kNone, confidence is
/// outside [0,1] or the duration is not positive.
void validate(const Classification& c);

enum class Precision { kFp32, kFp16 };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

inline constexpr std::int64_t kDefaultWorkspaceBytes = std::int64_t{1} << 25;

/// How an inference engine was optimised. Only carried as metadata; nothing
/// in this library rewrites weights.
struct AccelConfig {
  std::string name = "default";
  Precision precision = Precision::kFp32;
  std::int64_t max_workspace_bytes = kDefaultWorkspaceBytes;
  int max_batch = 1;
  double resolution_scale = 1.0;
  bool prebuilt_engine = false;
};

void validate(const AccelConfig& accel);

inline constexpr int kBaseWidth = 512;
inline constexpr int kBaseHeight = 384;

}  // namespace ew
