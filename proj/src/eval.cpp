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

#include "ew/eval.hpp"

#include <sstream>

#include "ew/error.hpp"
#include "ew/image.hpp"
#include "ew/json_io.hpp"

namespace ew {
namespace fs = std::filesystem;

std::string_view to_string(ErrorFlag f) {
  switch (f) {
    case ErrorFlag::kGlare: return "glare";
    case ErrorFlag::kZoom: return "zoom";
    case ErrorFlag::kOther: return "other";
  }
  return "other";
}

ErrorFlag parse_error_flag(std::string_view text) {
  if (text == "glare") return ErrorFlag::kGlare;
  if (text == "zoom") return ErrorFlag::kZoom;
  if (text == "other") return ErrorFlag::kOther;
  throw Error(ErrorKind::kSchemaViolation,
              "error flag must be glare, zoom or other, got '" + std::string(text) + "'");
}

void validate(const EvalItem& item) {
  if (item.truth == ClassLabel::kNone || item.predicted == ClassLabel::kNone) {
    throw Error(ErrorKind::kInvalidArgument, item.ref + ": labels must be categories");
  }
  if (item.flag && item.predicted == item.truth) {
    throw Error(ErrorKind::kInvalidArgument,
                item.ref + ": error flag on a correct prediction");
  }
}

EvalReport evaluate(std::span<const EvalItem> items) {
  if (items.empty()) throw Error(ErrorKind::kInvalidArgument, "nothing to evaluate");
  EvalReport r;
  for (const auto& item : items) {
    validate(item);
    const auto t = category_index(item.truth);
    const auto p = category_index(item.predicted);
    ++r.total;
    ++r.category_total[t];
    ++r.confusion[t][p];
    if (t == p) {
      ++r.correct;
      ++r.category_correct[t];
    } else if (item.flag) {
      ++r.flagged;
      ++r.category_flagged[t];
      ++r.flag_counts[static_cast<std::size_t>(*item.flag)];
    }
  }
  const auto n = static_cast<double>(r.total);
  r.accuracy_including_errors = static_cast<double>(r.correct) / n;
  r.accuracy_excluding_errors = static_cast<double>(r.correct + r.flagged) / n;
  return r;
}

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::vector<ManifestEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(lineno);
    const nlohmann::json j = parse_json(line, where);
    ManifestEntry e;
    try {
      e.file = require_string(j, "file", where);
      e.truth = parse_label(require_string(j, "truth", where));
      if (j.contains("predicted") && !j["predicted"].is_null()) {
        e.predicted = parse_label(require_string(j, "predicted", where));
      }
      if (j.contains("flag") && !j["flag"].is_null()) {
        e.flag = parse_error_flag(require_string(j, "flag", where));
      }
    } catch (const Error& err) {
      if (std::string_view(err.what()).starts_with(where)) throw;
      throw Error(err.kind(), where + ": " + err.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EvalItem> resolve_predictions(const std::vector<ManifestEntry>& entries,
                                          Backend* backend, const fs::path& base_dir) {
  std::vector<EvalItem> items;
  items.reserve(entries.size());
  for (const auto& e : entries) {
    EvalItem item{e.file, e.truth, ClassLabel::kNone, e.flag};
    if (e.predicted) {
      item.predicted = *e.predicted;
    } else {
      if (backend == nullptr) {
        throw Error(ErrorKind::kInvalidArgument,
                    e.file + ": no prediction in manifest and no backend configured");
      }
      const fs::path file = fs::path(e.file).is_relative() ? base_dir / e.file : fs::path(e.file);
      const auto& d = backend->descriptor();
      item.predicted = backend->infer(resize_to(decode_image(file), d.input_width,
                                                d.input_height)).label;
    }
    items.push_back(std::move(item));
  }
  return items;
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json categories = nlohmann::json::array();
  nlohmann::json matrix = nlohmann::json::array();
  nlohmann::json labels = nlohmann::json::array();
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    labels.push_back(to_string(kCategories[i]));
    categories.push_back({{"category", to_string(kCategories[i])},
                          {"total", r.category_total[i]},
                          {"correct", r.category_correct[i]},
                          {"flagged", r.category_flagged[i]}});
    matrix.push_back(r.confusion[i]);
  }
  return {{"total", r.total},
          {"correct", r.correct},
          {"flagged", r.flagged},
          {"accuracy_including_errors", r.accuracy_including_errors},
          {"accuracy_excluding_errors", r.accuracy_excluding_errors},
          {"categories", categories},
          {"confusion", {{"labels", labels}, {"matrix", matrix}}},
          {"flags",
           {{"glare", r.flag_counts[0]}, {"zoom", r.flag_counts[1]}, {"other", r.flag_counts[2]}}}};
}

std::string emit_report(const EvalReport& r, ReportFormat format) {
  if (r.total == 0) throw Error(ErrorKind::kUnsupportedFormat, "unsupported: empty report");
  if (format == ReportFormat::kJson) return to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "category,total,correct\n";
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    out << to_string(kCategories[i]) << ',' << r.category_total[i] << ','
        << r.category_correct[i] << '\n';
  }
  return out.str();
}

}  // namespace ew
