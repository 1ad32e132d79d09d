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
#include <vector>

#include "ew/telemetry.hpp"
#include "ew/trace.hpp"
#include "json.hpp"

namespace ew {

/// Throughput at or above this counts as real time (100 ms per inference).
inline constexpr double kRealtimeIps = 10.0;

/// One backend entry of a sweep. Either a trace file (all traces in it, or
/// the one named) or an inline backend object as accepted by a run config.
struct SweepBackend {
  std::optional<std::filesystem::path> trace_file;
  std::optional<std::string> trace;
  nlohmann::json backend;  // used when trace_file is empty
  std::string name;
};

struct SweepSpec {
  std::string name = "sweep";
  std::vector<SweepBackend> backends;
  std::vector<PowerMode> power_profiles = {PowerMode::kMaxn};
  std::vector<int> queue_sizes = {10};
  PowerConfig power = default_power_config();
  int repetitions = 1;
  /// Frames per repetition for non-trace backends; traces use one full cycle.
  int frames = 100;
  double capture_s = 0.0;
  bool simulated_clock = true;
  bool parallel = true;
  std::string baseline;
  std::filesystem::path base_dir = ".";
};

/// Throws Error(kInvalidArgument) when the spec has no backends, no
/// profiles/queue sizes, or repetitions < 1.
void validate(const SweepSpec& s);

SweepSpec sweep_spec_from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct BenchCell {
  std::string backend;
  PowerMode power_profile = PowerMode::kMaxn;
  int queue_size = 10;
  bool ok = true;
  std::string error;
  std::optional<AccelConfig> accel;
  std::optional<double> model_size_mb;
  std::int64_t frames = 0;
  double mean_inference_s = 0;
  double median_inference_s = 0;
  double ips = 0;           // 1 / mean inference
  double pipeline_ips = 0;  // including capture
  double watts = 0;
  double efficiency = 0;
  std::optional<double> speedup;
  bool realtime = false;
};

struct BenchReport {
  std::string name;
  std::string baseline;
  std::vector<BenchCell> cells;
};

/// Runs every backend x power profile x queue size combination. A failing
/// combination is marked failed without stopping the others. Speedups are
/// mean(baseline) / mean(cell), against the baseline backend under the same
/// profile and queue size.
BenchReport run_sweep(const SweepSpec& spec);

enum class ReportFormat { kJson, kCsv };

/// Throws Error(kUnsupportedFormat) for an unknown name.
ReportFormat parse_report_format(std::string_view text);

/// Deterministic rendering: sorted JSON keys, fixed CSV header. An empty
/// report throws Error(kUnsupportedFormat).
std::string emit_report(const BenchReport& r, ReportFormat format);

nlohmann::json to_json(const BenchReport& r);

}  // namespace ew
