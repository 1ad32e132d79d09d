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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ew/clock.hpp"
#include "ew/domain.hpp"
#include "json.hpp"

namespace ew {

struct LabeledFrame {
  Frame frame;
  std::optional<ClassLabel> truth;
  std::string ref;  // file path or synthetic index
};

/// Produces frames one at a time, charging capture time to the given clock.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  /// Empty once the source is exhausted.
  virtual std::optional<LabeledFrame> next(Clock& clock) = 0;
};

inline constexpr double kDefaultSyntheticCaptureS = 0.020;

struct SyntheticOptions {
  int width = kBaseWidth;
  int height = kBaseHeight;
  double capture_s = kDefaultSyntheticCaptureS;
  /// Runs of (label, count) played in order. Empty means an endless rotation
  /// through the categories, `run_length` frames each.
  std::vector<std::pair<ClassLabel, int>> script;
  int run_length = 12;
  std::uint64_t seed = 1;
};

/// Frames painted in the category's palette colour with a little seeded
/// noise, so palette-rule mocks recover the scripted label.
class SyntheticSource final : public FrameSource {
 public:
  explicit SyntheticSource(SyntheticOptions options);
  std::optional<LabeledFrame> next(Clock& clock) override;

  /// Total frames the script holds, or empty when endless.
  std::optional<std::int64_t> length() const;

 private:
  SyntheticOptions options_;
  std::int64_t index_ = 0;
};

struct LabeledPath {
  std::filesystem::path path;
  ClassLabel truth;
};

/// Lists <root>/<category>/<file> in lexicographic order (category directory
/// name, then file name). Hidden entries and top-level files are skipped.
/// Throws Error(kUnknownLabel) for a subdirectory that is not a category and
/// Error(kIoError) if the root is missing.
std::vector<LabeledPath> list_labeled_images(const std::filesystem::path& root);

/// Lists and decodes every image.
std::vector<LabeledFrame> ingest_directory(const std::filesystem::path& root);

class DirectorySource final : public FrameSource {
 public:
  /// `capture_s` is charged per frame under a simulated clock; a real clock
  /// charges the actual decode time.
  explicit DirectorySource(const std::filesystem::path& root, double capture_s = 0.0);
  std::optional<LabeledFrame> next(Clock& clock) override;

  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<LabeledPath> entries_;
  double capture_s_;
  std::size_t index_ = 0;
};

/// Builds a source from a run-config "source" object:
///   {"kind": "synthetic", "width", "height", "capture_s", "seed",
///    "script": [["cardboard", 12], ...], "run_length"}
///   {"kind": "directory", "path", "capture_s"}
/// Relative paths resolve against `base_dir`.
std::unique_ptr<FrameSource> source_from_json(const nlohmann::json& j,
                                              const std::filesystem::path& base_dir);

}  // namespace ew
