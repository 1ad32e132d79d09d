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

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ew/domain.hpp"
#include "json.hpp"

namespace ew {

/// {"precision": "fp32"|"fp16", "max_workspace_bytes": int,
/// "resolution_scale": num, "max_batch": int, "prebuilt_engine": bool,
/// "name": str}; every key optional.
AccelConfig accel_from_json(const nlohmann::json& j, const std::string& context);
nlohmann::json to_json(const AccelConfig& a);

/// Recorded per-inference timings of one acceleration configuration, with an
/// optional label script replayed cyclically.
struct LatencyTrace {
  std::string name;
  AccelConfig accel;
  std::vector<double> samples_s;
  std::vector<std::pair<ClassLabel, double>> labels;
  std::optional<double> model_size_mb;

  /// Mean over one full cycle of samples, computed in integer nanoseconds.
  double mean_s() const;
};

/// Throws Error(kSchemaViolation) naming the offending field.
void validate(const LatencyTrace& t);

/// `context` prefixes field names in error messages ("traces[1]").
LatencyTrace trace_from_json(const nlohmann::json& j,
                             const std::string& context = "trace");
nlohmann::json to_json(const LatencyTrace& t);

/// Reads a trace file holding one trace object, an array of traces, or
/// {"traces": [...]}. Parse errors carry line and column.
std::vector<LatencyTrace> load_traces(const std::filesystem::path& path);

/// Single-trace form: with `name` picks that trace from a multi-trace file;
/// without it the file must hold exactly one trace.
LatencyTrace load_trace(const std::filesystem::path& path,
                        const std::optional<std::string>& name = std::nullopt);

}  // namespace ew
