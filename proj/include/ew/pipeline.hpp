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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ew/backend.hpp"
#include "ew/clock.hpp"
#include "ew/debounce.hpp"
#include "ew/error.hpp"
#include "ew/sink.hpp"
#include "ew/source.hpp"
#include "ew/telemetry.hpp"
#include "json.hpp"

namespace ew {

/// Whichever limit is hit first ends the run; source exhaustion always does.
struct StopCondition {
  std::optional<std::int64_t> frames;
  std::optional<double> seconds;
};

struct RunOptions {
  int queue_capacity = kDefaultQueueCapacity;
  std::optional<double> confidence_floor;
  double telemetry_window_s = kDefaultTelemetryWindowS;
  std::string power_state = "inferencing(maxn)";
  double watts = 5.0;
  /// Capture the next frame while the current one is inferred (hand-off
  /// depth 1).
  bool overlap_capture = false;
  StopCondition stop;
};

struct RunEvent {
  ActuationEvent event;
  double t = 0;  // seconds since run start
  std::int64_t frame_index = 0;
};

struct RunSummary {
  std::string name;
  bool complete = true;
  std::optional<ErrorKind> error_kind;
  std::string error;
  std::int64_t frames = 0;
  std::int64_t inferences = 0;
  std::int64_t pushes = 0;
  std::int64_t below_floor = 0;
  std::int64_t labeled = 0;
  std::int64_t labeled_correct = 0;
  ClassLabel final_state = ClassLabel::kNone;
  std::vector<RunEvent> events;
  double elapsed_s = 0;
  double mean_inference_s = 0;
  double median_inference_s = 0;
  double mean_capture_s = 0;
  /// 1 / mean inference time: throughput of the model alone.
  double model_ips = 0;
  /// Inferences / elapsed: throughput including capture.
  double pipeline_ips = 0;
  std::vector<TelemetrySample> telemetry;
  Timestamp origin{0};
};

nlohmann::json to_json(const RunSummary& s);

/// Runs source -> resize -> backend -> debounce -> sink until the stop
/// condition. Backend, source and sink failures end the run early with
/// `complete == false`; they are reported, not thrown.
RunSummary run_pipeline(FrameSource& source, Backend& backend, ActuationSink& sink,
                        Clock& clock, const RunOptions& options);

/// A parsed run config.
///
///   {"name": str, "simulated_clock": bool, "source": {...}, "backend": {...},
///    "queue_capacity": int, "confidence_floor": num|null, "sink": {...},
///    "telemetry_window_s": num, "power": {...}, "overlap_capture": bool,
///    "stop": {"frames": int, "seconds": num}}
struct PipelineConfig {
  std::string name = "run";
  bool simulated_clock = false;
  nlohmann::json source;
  nlohmann::json backend;
  nlohmann::json sink = {{"kind", "stdout"}};
  PowerConfig power = default_power_config();
  RunOptions options;
  std::filesystem::path base_dir = ".";
  std::optional<std::uint64_t> seed;
};

PipelineConfig pipeline_config_from_json(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Builds every component from the config and runs it. Construction errors
/// (bad schema, unreachable sink) throw; run-time failures are reported in
/// the summary. `stdout_stream` backs a "stdout" sink.
RunSummary run_pipeline(const PipelineConfig& cfg, std::ostream& stdout_stream);

}  // namespace ew
