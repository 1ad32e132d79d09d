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

#include "ew/bench.hpp"

#include <cstdio>
#include <future>
#include <sstream>

#include "ew/backend.hpp"
#include "ew/error.hpp"
#include "ew/json_io.hpp"
#include "ew/pipeline.hpp"

namespace ew {
namespace fs = std::filesystem;

namespace {

/// A backend entry expanded to something runnable, or the reason it can't be.
struct Combination {
  std::string name;
  std::optional<LatencyTrace> trace;
  nlohmann::json backend;
  PowerMode profile = PowerMode::kMaxn;
  int queue_size = 10;
  std::string load_error;
};

std::vector<Combination> expand(const SweepSpec& spec) {
  struct Entry {
    std::string name;
    std::optional<LatencyTrace> trace;
    nlohmann::json backend;
    std::string error;
  };
  std::vector<Entry> entries;
  for (const auto& b : spec.backends) {
    if (!b.trace_file) {
      entries.push_back({b.name, std::nullopt, b.backend, {}});
      continue;
    }
    const fs::path file = b.trace_file->is_relative() ? spec.base_dir / *b.trace_file
                                                      : *b.trace_file;
    try {
      if (b.trace) {
        auto t = load_trace(file, b.trace);
        entries.push_back({b.name.empty() ? t.name : b.name, t, {}, {}});
      } else {
        for (auto& t : load_traces(file)) entries.push_back({t.name, t, {}, {}});
      }
    } catch (const Error& e) {
      std::string name = b.name;
      if (name.empty()) name = b.trace.value_or(b.trace_file->filename().string());
      entries.push_back({name, std::nullopt, {}, e.what()});
    }
  }

  std::vector<Combination> out;
  for (const auto& e : entries) {
    for (PowerMode p : spec.power_profiles) {
      for (int q : spec.queue_sizes) {
        out.push_back({e.name, e.trace, e.backend, p, q, e.error});
      }
    }
  }
  return out;
}

BenchCell run_combination(const SweepSpec& spec, const Combination& combo) {
  BenchCell cell;
  cell.backend = combo.name;
  cell.power_profile = combo.profile;
  cell.queue_size = combo.queue_size;
  if (!combo.load_error.empty()) {
    cell.ok = false;
    cell.error = combo.load_error;
    return cell;
  }
  try {
    cell.watts = spec.power.table(combo.profile).inferencing;
    auto clock = make_clock(spec.simulated_clock);
    std::unique_ptr<Backend> backend;
    std::int64_t frames = static_cast<std::int64_t>(spec.repetitions) * spec.frames;
    if (combo.trace) {
      backend = std::make_unique<TraceBackend>(*combo.trace, *clock);
      frames = static_cast<std::int64_t>(spec.repetitions) *
               static_cast<std::int64_t>(combo.trace->samples_s.size());
      cell.model_size_mb = combo.trace->model_size_mb;
    } else {
      backend = backend_from_json(combo.backend, spec.base_dir, *clock);
    }
    cell.accel = backend->descriptor().accel;

    SyntheticOptions so;
    so.width = backend->descriptor().input_width;
    so.height = backend->descriptor().input_height;
    so.capture_s = spec.capture_s;
    SyntheticSource source(so);
    MemorySink sink;
    RunOptions ro;
    ro.queue_capacity = combo.queue_size;
    ro.power_state = "inferencing(" + std::string(to_string(combo.profile)) + ")";
    ro.watts = cell.watts;
    ro.stop.frames = frames;

    const RunSummary s = run_pipeline(source, *backend, sink, *clock, ro);
    if (!s.complete) {
      cell.ok = false;
      cell.error = s.error;
    }
    cell.frames = s.inferences;
    cell.mean_inference_s = s.mean_inference_s;
    cell.median_inference_s = s.median_inference_s;
    cell.ips = s.model_ips;
    cell.pipeline_ips = s.pipeline_ips;
    cell.efficiency = efficiency(cell.ips, cell.watts);
    cell.realtime = cell.ok && cell.ips >= kRealtimeIps;
  } catch (const Error& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

void fill_speedups(BenchReport& r) {
  for (auto& cell : r.cells) {
    if (!cell.ok || cell.mean_inference_s <= 0) continue;
    for (const auto& base : r.cells) {
      if (base.backend == r.baseline && base.ok &&
          base.power_profile == cell.power_profile &&
          base.queue_size == cell.queue_size) {
        cell.speedup = base.mean_inference_s / cell.mean_inference_s;
        break;
      }
    }
  }
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void validate(const SweepSpec& s) {
  if (s.backends.empty()) throw Error(ErrorKind::kInvalidArgument, "sweep has no backends");
  if (s.power_profiles.empty() || s.queue_sizes.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "sweep needs power profiles and queue sizes");
  }
  if (s.repetitions < 1) throw Error(ErrorKind::kInvalidArgument, "repetitions must be >= 1");
  if (s.frames < 1) throw Error(ErrorKind::kInvalidArgument, "frames must be >= 1");
  for (int q : s.queue_sizes) {
    if (q < 1) throw Error(ErrorKind::kInvalidArgument, "queue sizes must be >= 1");
  }
  if (s.capture_s < 0) throw Error(ErrorKind::kInvalidArgument, "capture_s must be >= 0");
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorKind::kSchemaViolation, "sweep spec must be an object");
  SweepSpec s;
  s.base_dir = base_dir;
  s.name = j.value("name", s.name);
  s.baseline = j.value("baseline", s.baseline);
  s.repetitions = j.value("repetitions", s.repetitions);
  s.frames = j.value("frames", s.frames);
  s.capture_s = j.value("capture_s", s.capture_s);
  s.simulated_clock = j.value("simulated_clock", s.simulated_clock);
  s.parallel = j.value("parallel", s.parallel);
  if (j.contains("power")) s.power = power_config_from_json(j["power"]);
  if (j.contains("power_profiles")) {
    s.power_profiles.clear();
    for (const auto& p : j["power_profiles"]) {
      s.power_profiles.push_back(parse_power_mode(p.get<std::string>()));
    }
  }
  if (j.contains("queue_sizes")) s.queue_sizes = j["queue_sizes"].get<std::vector<int>>();
  if (!j.contains("backends") || !j["backends"].is_array()) {
    throw Error(ErrorKind::kSchemaViolation, "sweep spec needs a backends array");
  }
  for (const auto& b : j["backends"]) {
    SweepBackend sb;
    sb.name = b.value("name", std::string());
    if (b.contains("trace_file")) {
      sb.trace_file = fs::path(require_string(b, "trace_file", "backends[]"));
      if (b.contains("trace")) sb.trace = require_string(b, "trace", "backends[]");
    } else {
      sb.backend = b;
      if (sb.name.empty()) sb.name = require_string(b, "kind", "backends[]");
    }
    s.backends.push_back(std::move(sb));
  }
  validate(s);
  return s;
}

SweepSpec load_sweep_spec(const fs::path& path) {
  return sweep_spec_from_json(read_json_file(path), path.parent_path());
}

BenchReport run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto combos = expand(spec);
  BenchReport r;
  r.name = spec.name;
  r.baseline = spec.baseline.empty() && !combos.empty() ? combos.front().name : spec.baseline;

  if (spec.parallel && combos.size() > 1) {
    std::vector<std::future<BenchCell>> futures;
    futures.reserve(combos.size());
    for (const auto& c : combos) {
      futures.push_back(std::async(std::launch::async,
                                   [&spec, &c] { return run_combination(spec, c); }));
    }
    for (auto& f : futures) r.cells.push_back(f.get());
  } else {
    for (const auto& c : combos) r.cells.push_back(run_combination(spec, c));
  }
  fill_speedups(r);
  return r;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw Error(ErrorKind::kUnsupportedFormat,
              "unsupported report format '" + std::string(text) + "'");
}

nlohmann::json to_json(const BenchReport& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    nlohmann::json j = {{"backend", c.backend},
                        {"power_profile", to_string(c.power_profile)},
                        {"queue_size", c.queue_size},
                        {"ok", c.ok},
                        {"frames", c.frames},
                        {"mean_inference_s", c.mean_inference_s},
                        {"median_inference_s", c.median_inference_s},
                        {"ips", c.ips},
                        {"pipeline_ips", c.pipeline_ips},
                        {"watts", c.watts},
                        {"efficiency", c.efficiency},
                        {"realtime", c.realtime},
                        {"speedup", c.speedup ? nlohmann::json(*c.speedup) : nlohmann::json()}};
    if (c.accel) j["accel"] = to_json(*c.accel);
    if (c.model_size_mb) j["model_size_mb"] = *c.model_size_mb;
    if (!c.ok) j["error"] = c.error;
    cells.push_back(std::move(j));
  }
  return {{"name", r.name},
          {"baseline", r.baseline},
          {"realtime_threshold_ips", kRealtimeIps},
          {"cells", cells}};
}

std::string emit_report(const BenchReport& r, ReportFormat format) {
  if (r.cells.empty()) {
    throw Error(ErrorKind::kUnsupportedFormat, "unsupported: empty report");
  }
  if (format == ReportFormat::kJson) return to_json(r).dump(2) + "\n";

  std::ostringstream out;
  out << "backend,power_profile,queue_size,status,precision,resolution_scale,frames,"
         "mean_inference_s,median_inference_s,ips,pipeline_ips,watts,efficiency,"
         "speedup,realtime,error\n";
  for (const auto& c : r.cells) {
    out << csv_escape(c.backend) << ',' << to_string(c.power_profile) << ','
        << c.queue_size << ',' << (c.ok ? "ok" : "failed") << ','
        << (c.accel ? std::string(to_string(c.accel->precision)) : "") << ','
        << (c.accel ? num(c.accel->resolution_scale) : "") << ',' << c.frames << ','
        << num(c.mean_inference_s) << ',' << num(c.median_inference_s) << ','
        << num(c.ips) << ',' << num(c.pipeline_ips) << ',' << num(c.watts) << ','
        << num(c.efficiency) << ',' << (c.speedup ? num(*c.speedup) : "") << ','
        << (c.realtime ? "true" : "false") << ',' << csv_escape(c.error) << '\n';
  }
  return out.str();
}

}  // namespace ew
