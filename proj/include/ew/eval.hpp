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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ew/backend.hpp"
#include "ew/bench.hpp"
#include "ew/domain.hpp"
#include "json.hpp"

namespace ew {

/// Why an item was misclassified, as annotated by whoever ran the test.
enum class ErrorFlag { kGlare, kZoom, kOther };

std::string_view to_string(ErrorFlag f);
ErrorFlag parse_error_flag(std::string_view text);

struct EvalItem {
  std::string ref;
  ClassLabel truth = ClassLabel::kCardboard;
  ClassLabel predicted = ClassLabel::kCardboard;
  std::optional<ErrorFlag> flag;
};

/// Throws Error(kInvalidArgument) for `none` labels or a flag on a correct
/// prediction.
void validate(const EvalItem& item);

struct EvalReport {
  std::int64_t total = 0;
  std::int64_t correct = 0;
  std::int64_t flagged = 0;
  std::array<std::int64_t, kNumCategories> category_total{};
  std::array<std::int64_t, kNumCategories> category_correct{};
  std::array<std::int64_t, kNumCategories> category_flagged{};
  /// confusion[truth][predicted]
  std::array<std::array<std::int64_t, kNumCategories>, kNumCategories> confusion{};
  std::array<std::int64_t, 3> flag_counts{};  // glare, zoom, other
  double accuracy_including_errors = 0;
  /// Counts flagged misclassifications as resolved; same denominator.
  double accuracy_excluding_errors = 0;
};

/// Throws Error(kInvalidArgument) for an empty sequence or an invalid item.
EvalReport evaluate(std::span<const EvalItem> items);

/// One manifest line: {"file": str, "truth": str, "predicted": str?,
/// "flag": "glare"|"zoom"|"other"|null}.
struct ManifestEntry {
  std::string file;
  ClassLabel truth = ClassLabel::kCardboard;
  std::optional<ClassLabel> predicted;
  std::optional<ErrorFlag> flag;
};

/// Reads a JSON-lines manifest; blank lines are skipped. Errors name the line.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

/// Entries without a prediction are classified by `backend` (image files
/// resolve against `base_dir`). Throws Error(kInvalidArgument) if one is
/// missing a prediction and no backend is given.
std::vector<EvalItem> resolve_predictions(const std::vector<ManifestEntry>& entries,
                                          Backend* backend,
                                          const std::filesystem::path& base_dir);

nlohmann::json to_json(const EvalReport& r);

/// JSON (sorted keys) or per-category CSV "category,total,correct".
std::string emit_report(const EvalReport& r, ReportFormat format);

}  // namespace ew
