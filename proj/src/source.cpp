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

#include "ew/source.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "ew/backend.hpp"
#include "ew/error.hpp"
#include "ew/image.hpp"
#include "ew/json_io.hpp"

namespace ew {
namespace fs = std::filesystem;

namespace {

bool hidden(const fs::path& p) {
  const auto name = p.filename().string();
  return name.empty() || name.front() == '.';
}

}  // namespace

SyntheticSource::SyntheticSource(SyntheticOptions options)
    : options_(std::move(options)) {
  if (options_.width < 1 || options_.height < 1) {
    throw Error(ErrorKind::kInvalidArgument, "synthetic frame size must be positive");
  }
  if (options_.capture_s < 0) {
    throw Error(ErrorKind::kInvalidArgument, "capture_s must be >= 0");
  }
  if (options_.run_length < 1) {
    throw Error(ErrorKind::kInvalidArgument, "run_length must be >= 1");
  }
  for (const auto& [label, count] : options_.script) {
    if (label == ClassLabel::kNone || count < 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "synthetic script needs categories with non-negative counts");
    }
  }
}

std::optional<std::int64_t> SyntheticSource::length() const {
  if (options_.script.empty()) return std::nullopt;
  std::int64_t n = 0;
  for (const auto& run : options_.script) n += run.second;
  return n;
}

std::optional<LabeledFrame> SyntheticSource::next(Clock& clock) {
  ClassLabel label;
  if (options_.script.empty()) {
    label = kCategories[static_cast<std::size_t>(index_ / options_.run_length) %
                        kNumCategories];
  } else {
    std::int64_t remaining = index_;
    std::optional<ClassLabel> found;
    for (const auto& [l, count] : options_.script) {
      if (remaining < count) {
        found = l;
        break;
      }
      remaining -= count;
    }
    if (!found) return std::nullopt;
    label = *found;
  }

  const auto color = palette_color(label);
  std::mt19937_64 rng(options_.seed * 1000003u + static_cast<std::uint64_t>(index_));
  std::vector<std::uint8_t> px(static_cast<std::size_t>(options_.width) *
                               options_.height * 3);
  // Per-channel lookup of colour + noise for each of the 13 noise levels.
  std::array<std::array<std::uint8_t, 13>, 3> shade{};
  for (std::size_t c = 0; c < 3; ++c) {
    for (int k = 0; k < 13; ++k) {
      shade[c][k] = static_cast<std::uint8_t>(std::clamp(color[c] + k - 6, 0, 255));
    }
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (i % 8 == 0) bits = rng();
    const auto level = ((bits & 0xff) * 13) >> 8;
    bits >>= 8;
    px[i] = shade[i % 3][level];
  }

  const Timestamp cap = from_seconds(options_.capture_s);
  clock.sleep_for(cap);
  Frame frame(options_.width, options_.height, std::move(px), clock.now(),
              options_.capture_s);
  const std::string ref = "synthetic:" + std::to_string(index_);
  ++index_;
  return LabeledFrame{std::move(frame), label, ref};
}

std::vector<LabeledPath> list_labeled_images(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorKind::kIoError, "not a directory: " + root.string());
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (hidden(entry.path()) || !entry.is_directory()) continue;
    dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());

  std::vector<LabeledPath> out;
  for (const auto& dir : dirs) {
    const ClassLabel label = parse_label(dir.filename().string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (hidden(entry.path()) || !entry.is_regular_file()) continue;
      files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (auto& f : files) out.push_back({std::move(f), label});
  }
  return out;
}

std::vector<LabeledFrame> ingest_directory(const fs::path& root) {
  std::vector<LabeledFrame> out;
  for (const auto& [path, truth] : list_labeled_images(root)) {
    out.push_back({decode_image(path), truth, path.string()});
  }
  return out;
}

DirectorySource::DirectorySource(const fs::path& root, double capture_s)
    : entries_(list_labeled_images(root)), capture_s_(capture_s) {
  if (capture_s_ < 0) {
    throw Error(ErrorKind::kInvalidArgument, "capture_s must be >= 0");
  }
}

std::optional<LabeledFrame> DirectorySource::next(Clock& clock) {
  if (index_ >= entries_.size()) return std::nullopt;
  const auto& entry = entries_[index_++];
  const Timestamp start = clock.now();
  Frame decoded = decode_image(entry.path);
  double capture_s = capture_s_;
  if (clock.simulated()) {
    clock.sleep_for(from_seconds(capture_s_));
  } else {
    capture_s = to_seconds(clock.now() - start);
  }
  return LabeledFrame{decoded.with_capture(clock.now(), capture_s), entry.truth,
                      entry.path.string()};
}

std::unique_ptr<FrameSource> source_from_json(const nlohmann::json& j,
                                              const fs::path& base_dir) {
  const std::string ctx = "source";
  const std::string kind = require_string(j, "kind", ctx);
  if (kind == "synthetic") {
    SyntheticOptions o;
    o.width = j.value("width", o.width);
    o.height = j.value("height", o.height);
    o.capture_s = j.value("capture_s", o.capture_s);
    o.seed = j.value("seed", o.seed);
    o.run_length = j.value("run_length", o.run_length);
    if (j.contains("script")) {
      const auto& script = j["script"];
      if (!script.is_array()) {
        throw Error(ErrorKind::kSchemaViolation, "source.script must be an array");
      }
      for (const auto& run : script) {
        if (!run.is_array() || run.size() != 2 || !run[0].is_string() ||
            !run[1].is_number_integer()) {
          throw Error(ErrorKind::kSchemaViolation,
                      "source.script entries must be [label, count]");
        }
        o.script.emplace_back(parse_label(run[0].get<std::string>()), run[1].get<int>());
      }
    }
    return std::make_unique<SyntheticSource>(std::move(o));
  }
  if (kind == "directory") {
    fs::path root = require_string(j, "path", ctx);
    if (root.is_relative()) root = base_dir / root;
    return std::make_unique<DirectorySource>(root, j.value("capture_s", 0.0));
  }
  if (kind == "device") {
    throw Error(ErrorKind::kUnsupportedFormat,
                "camera sources are not part of this build");
  }
  throw Error(ErrorKind::kSchemaViolation,
              "source.kind must be synthetic or directory, got '" + kind + "'");
}

}  // namespace ew
