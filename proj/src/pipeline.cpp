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

#include "ew/pipeline.hpp"

#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include "ew/image.hpp"
#include "ew/json_io.hpp"

namespace ew {
namespace {

/// Per-run mutable state shared by the serial and overlapped drivers.
class RunState {
 public:
  RunState(Backend& backend, ActuationSink& sink, Clock& clock, const RunOptions& options)
      : backend_(backend),
        sink_(sink),
        clock_(clock),
        options_(options),
        queue_(options.queue_capacity, options.confidence_floor),
        origin_(clock.now()),
        telemetry_(options.telemetry_window_s, origin_),
        next_sample_(origin_ + from_seconds(options.telemetry_window_s)) {
    telemetry_.set_power(options.power_state, options.watts);
    summary_.origin = origin_;
  }

  Timestamp origin() const { return origin_; }
  TelemetryCollector& telemetry() { return telemetry_; }

  bool time_up() const {
    return options_.stop.seconds &&
           to_seconds(clock_.now() - origin_) >= *options_.stop.seconds;
  }

  void fail(const Error& e) {
    summary_.complete = false;
    summary_.error_kind = e.kind();
    summary_.error = e.what();
  }

  void fail_unexpected(const std::exception& e) {
    summary_.complete = false;
    summary_.error = e.what();
  }

  /// Resize, infer, vote and actuate for one captured frame. Returns false
  /// when the run must stop.
  bool process(const LabeledFrame& lf) {
    ++summary_.frames;
    Classification c;
    try {
      const auto& d = backend_.descriptor();
      c = backend_.infer(resize_to(lf.frame, d.input_width, d.input_height));
    } catch (const Error& e) {
      fail(e);
      return false;
    }
    const Timestamp done = clock_.now();
    telemetry_.record_inference(done, from_seconds(c.inference_duration_s));
    ++summary_.inferences;
    if (lf.truth) {
      ++summary_.labeled;
      if (*lf.truth == c.label) ++summary_.labeled_correct;
    }

    const std::size_t dropped_before = queue_.dropped();
    auto event = queue_.push(c);
    if (queue_.dropped() != dropped_before) {
      ++summary_.below_floor;
    } else {
      ++summary_.pushes;
    }
    if (event) {
      event->at = done;
      const double t = to_seconds(done - origin_);
      summary_.events.push_back({*event, t, summary_.frames});
      try {
        sink_.emit(*event, t);
      } catch (const Error& e) {
        fail(e);
        return false;
      }
    }

    while (done >= next_sample_) {
      summary_.telemetry.push_back(telemetry_.sample(next_sample_));
      next_sample_ += from_seconds(options_.telemetry_window_s);
    }
    return true;
  }

  RunSummary finish() {
    const Timestamp end = clock_.now();
    if (summary_.telemetry.empty() || summary_.telemetry.back().window_end != end) {
      summary_.telemetry.push_back(telemetry_.sample(end));
    }
    summary_.final_state = queue_.committed();
    summary_.elapsed_s = to_seconds(end - origin_);
    summary_.mean_inference_s = telemetry_.mean_inference_s();
    summary_.median_inference_s = telemetry_.median_inference_s();
    summary_.mean_capture_s = telemetry_.mean_capture_s();
    if (summary_.mean_inference_s > 0) summary_.model_ips = 1.0 / summary_.mean_inference_s;
    if (summary_.elapsed_s > 0) {
      summary_.pipeline_ips = static_cast<double>(summary_.inferences) / summary_.elapsed_s;
    }
    return std::move(summary_);
  }

 private:
  Backend& backend_;
  ActuationSink& sink_;
  Clock& clock_;
  const RunOptions& options_;
  DebounceQueue queue_;
  Timestamp origin_;
  TelemetryCollector telemetry_;
  Timestamp next_sample_;
  RunSummary summary_;
};

void record_capture(TelemetryCollector& t, const LabeledFrame& lf) {
  t.record_capture(lf.frame.captured_at(), from_seconds(lf.frame.capture_duration_s()));
}

RunSummary run_serial(FrameSource& source, RunState& state, Clock& clock,
                      const RunOptions& options) {
  std::int64_t captured = 0;
  for (;;) {
    if (options.stop.frames && captured >= *options.stop.frames) break;
    if (state.time_up()) break;
    std::optional<LabeledFrame> lf;
    try {
      lf = source.next(clock);
    } catch (const Error& e) {
      state.fail(e);
      break;
    }
    if (!lf) break;
    ++captured;
    record_capture(state.telemetry(), *lf);
    if (!state.process(*lf)) break;
  }
  return state.finish();
}

/// Depth-1 hand-off between the capture and inference stages. Timestamps
/// travel with the frames so a simulated run gives the same timeline no
/// matter how the two threads interleave.
struct Handoff {
  std::mutex mu;
  std::condition_variable cv;
  std::optional<LabeledFrame> item;
  Timestamp placed_at{0};
  Timestamp last_taken_at{0};
  bool closed = false;
  bool cancelled = false;
  std::optional<Error> error;
};

RunSummary run_overlapped(FrameSource& source, RunState& state, Clock& clock,
                          const RunOptions& options) {
  Handoff h;
  h.last_taken_at = state.origin();
  std::unique_ptr<Clock> capture_clock_owner;
  Clock* capture_clock = &clock;
  if (clock.simulated()) {
    capture_clock_owner = std::make_unique<SimulatedClock>(state.origin());
    capture_clock = capture_clock_owner.get();
  }

  std::thread producer([&] {
    std::int64_t produced = 0;
    for (;;) {
      if (options.stop.frames && produced >= *options.stop.frames) break;
      {
        std::lock_guard lock(h.mu);
        if (h.cancelled) break;
      }
      std::optional<LabeledFrame> lf;
      try {
        lf = source.next(*capture_clock);
      } catch (const Error& e) {
        std::lock_guard lock(h.mu);
        h.error = e;
        break;
      }
      if (!lf) break;
      record_capture(state.telemetry(), *lf);
      std::unique_lock lock(h.mu);
      h.cv.wait(lock, [&] { return !h.item || h.cancelled; });
      if (h.cancelled) break;
      capture_clock->advance_to(h.last_taken_at);
      h.placed_at = capture_clock->now();
      h.item = std::move(lf);
      ++produced;
      h.cv.notify_all();
    }
    std::lock_guard lock(h.mu);
    h.closed = true;
    h.cv.notify_all();
  });

  auto cancel = [&] {
    std::lock_guard lock(h.mu);
    h.cancelled = true;
    h.cv.notify_all();
  };

  for (;;) {
    if (state.time_up()) {
      cancel();
      break;
    }
    std::optional<LabeledFrame> lf;
    {
      std::unique_lock lock(h.mu);
      h.cv.wait(lock, [&] { return h.item.has_value() || h.closed; });
      if (!h.item) {
        if (h.error) state.fail(*h.error);
        break;
      }
      lf = std::move(h.item);
      h.item.reset();
      clock.advance_to(h.placed_at);
      h.last_taken_at = clock.now();
      h.cv.notify_all();
    }
    if (!state.process(*lf)) {
      cancel();
      break;
    }
  }
  producer.join();
  return state.finish();
}

}  // namespace

nlohmann::json to_json(const RunSummary& s) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : s.events) {
    nlohmann::json ej = event_to_json(e.event, e.t);
    ej["frame"] = e.frame_index;
    events.push_back(std::move(ej));
  }
  nlohmann::json telemetry = nlohmann::json::array();
  for (const auto& t : s.telemetry) telemetry.push_back(to_json(t, s.origin));

  nlohmann::json j = {{"name", s.name},
                      {"complete", s.complete},
                      {"frames", s.frames},
                      {"inferences", s.inferences},
                      {"pushes", s.pushes},
                      {"below_confidence_floor", s.below_floor},
                      {"final_state", to_string(s.final_state)},
                      {"events", events},
                      {"elapsed_s", s.elapsed_s},
                      {"mean_inference_s", s.mean_inference_s},
                      {"median_inference_s", s.median_inference_s},
                      {"mean_capture_s", s.mean_capture_s},
                      {"model_ips", s.model_ips},
                      {"pipeline_ips", s.pipeline_ips},
                      {"telemetry", telemetry}};
  if (s.labeled > 0) {
    j["labeled_frames"] = s.labeled;
    j["labeled_correct"] = s.labeled_correct;
  }
  if (!s.complete) {
    j["error"] = s.error;
    if (s.error_kind) j["error_kind"] = to_string(*s.error_kind);
  }
  return j;
}

RunSummary run_pipeline(FrameSource& source, Backend& backend, ActuationSink& sink,
                        Clock& clock, const RunOptions& options) {
  RunState state(backend, sink, clock, options);
  try {
    if (options.overlap_capture) return run_overlapped(source, state, clock, options);
    return run_serial(source, state, clock, options);
  } catch (const Error& e) {
    state.fail(e);
    return state.finish();
  }
}

PipelineConfig pipeline_config_from_json(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorKind::kSchemaViolation, "run config must be an object");
  PipelineConfig c;
  c.base_dir = base_dir;
  c.name = j.value("name", c.name);
  c.simulated_clock = j.value("simulated_clock", false);
  if (!j.contains("source") || !j["source"].is_object()) {
    throw Error(ErrorKind::kSchemaViolation, "run config needs a source object");
  }
  if (!j.contains("backend") || !j["backend"].is_object()) {
    throw Error(ErrorKind::kSchemaViolation, "run config needs a backend object");
  }
  c.source = j["source"];
  c.backend = j["backend"];
  if (j.contains("sink")) c.sink = j["sink"];
  if (j.contains("power")) c.power = power_config_from_json(j["power"]);

  RunOptions& o = c.options;
  o.queue_capacity = j.value("queue_capacity", o.queue_capacity);
  if (o.queue_capacity < 1) {
    throw Error(ErrorKind::kInvalidArgument, "queue_capacity must be >= 1");
  }
  if (j.contains("confidence_floor") && !j["confidence_floor"].is_null()) {
    o.confidence_floor = require_number(j, "confidence_floor", "config");
  }
  o.telemetry_window_s = j.value("telemetry_window_s", o.telemetry_window_s);
  o.overlap_capture = j.value("overlap_capture", false);
  if (j.contains("stop")) {
    const auto& stop = j["stop"];
    if (stop.contains("frames")) o.stop.frames = stop["frames"].get<std::int64_t>();
    if (stop.contains("seconds")) o.stop.seconds = require_number(stop, "seconds", "stop");
  }
  o.power_state = c.power.active_state_name();
  o.watts = c.power.active_watts();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return pipeline_config_from_json(read_json_file(path), path.parent_path());
}

RunSummary run_pipeline(const PipelineConfig& cfg, std::ostream& stdout_stream) {
  auto clock = make_clock(cfg.simulated_clock);
  auto source = source_from_json(cfg.source, cfg.base_dir);
  auto backend = backend_from_json(cfg.backend, cfg.base_dir, *clock, cfg.seed);
  auto sink = sink_from_json(cfg.sink, stdout_stream);
  RunSummary s = run_pipeline(*source, *backend, *sink, *clock, cfg.options);
  s.name = cfg.name;
  return s;
}

}  // namespace ew
