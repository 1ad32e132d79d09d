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

#include "ew/trace.hpp"

#include <cmath>

#include "ew/error.hpp"
#include "ew/json_io.hpp"

namespace ew {
namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorKind::kSchemaViolation, what);
}

}  // namespace

AccelConfig accel_from_json(const nlohmann::json& j, const std::string& context) {
  if (!j.is_object()) schema_error(context + " must be an object");
  AccelConfig a;
  a.name = j.value("name", a.name);
  if (j.contains("precision")) {
    a.precision = parse_precision(require_string(j, "precision", context));
  }
  if (j.contains("max_workspace_bytes")) {
    if (!j["max_workspace_bytes"].is_number_integer()) {
      schema_error(context + ".max_workspace_bytes must be an integer");
    }
    a.max_workspace_bytes = j["max_workspace_bytes"].get<std::int64_t>();
  }
  if (j.contains("max_batch")) {
    if (!j["max_batch"].is_number_integer()) {
      schema_error(context + ".max_batch must be an integer");
    }
    a.max_batch = j["max_batch"].get<int>();
  }
  if (j.contains("resolution_scale")) {
    a.resolution_scale = require_number(j, "resolution_scale", context);
  }
  if (j.contains("prebuilt_engine")) {
    if (!j["prebuilt_engine"].is_boolean()) {
      schema_error(context + ".prebuilt_engine must be a boolean");
    }
    a.prebuilt_engine = j["prebuilt_engine"].get<bool>();
  }
  try {
    validate(a);
  } catch (const Error& e) {
    schema_error(context + ": " + e.what());
  }
  return a;
}

nlohmann::json to_json(const AccelConfig& a) {
  return {{"name", a.name},
          {"precision", to_string(a.precision)},
          {"max_workspace_bytes", a.max_workspace_bytes},
          {"max_batch", a.max_batch},
          {"resolution_scale", a.resolution_scale},
          {"prebuilt_engine", a.prebuilt_engine}};
}

double LatencyTrace::mean_s() const {
  if (samples_s.empty()) return 0.0;
  Timestamp::rep sum = 0;
  for (double s : samples_s) sum += from_seconds(s).count();
  return static_cast<double>(sum) / static_cast<double>(samples_s.size()) / 1e9;
}

void validate(const LatencyTrace& t) {
  const std::string ctx = "trace '" + t.name + "'";
  if (t.name.empty()) schema_error("trace name must be non-empty");
  if (t.samples_s.empty()) schema_error(ctx + ": samples_s must be non-empty");
  for (std::size_t i = 0; i < t.samples_s.size(); ++i) {
    const double s = t.samples_s[i];
    if (!(std::isfinite(s) && s > 0.0)) {
      schema_error(ctx + ": samples_s[" + std::to_string(i) +
                   "] must be a positive number");
    }
  }
  for (const auto& [label, conf] : t.labels) {
    if (label == ClassLabel::kNone || !(conf >= 0.0 && conf <= 1.0)) {
      schema_error(ctx + ": label script entries need a category and confidence in [0,1]");
    }
  }
}

LatencyTrace trace_from_json(const nlohmann::json& j, const std::string& context) {
  if (!j.is_object()) schema_error(context + " must be an object");
  LatencyTrace t;
  t.name = require_string(j, "name", context);
  if (j.contains("accel")) {
    t.accel = accel_from_json(j["accel"], context + ".accel");
  }
  t.accel.name = t.name;
  if (!j.contains("samples_s") || !j["samples_s"].is_array()) {
    schema_error(context + ".samples_s must be an array");
  }
  const auto& samples = j["samples_s"];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].is_number()) {
      schema_error(context + ".samples_s[" + std::to_string(i) + "] must be a number");
    }
    t.samples_s.push_back(samples[i].get<double>());
  }
  if (j.contains("labels")) {
    const auto& labels = j["labels"];
    if (!labels.is_array()) schema_error(context + ".labels must be an array");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto& e = labels[i];
      const std::string ectx = context + ".labels[" + std::to_string(i) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number()) {
        schema_error(ectx + " must be [label, confidence]");
      }
      ClassLabel label;
      try {
        label = parse_label(e[0].get<std::string>());
      } catch (const Error& err) {
        schema_error(ectx + ": " + err.what());
      }
      t.labels.emplace_back(label, e[1].get<double>());
    }
  }
  if (j.contains("model_size_mb")) {
    t.model_size_mb = require_number(j, "model_size_mb", context);
  }
  try {
    validate(t);
  } catch (const Error& e) {
    schema_error(context + ": " + e.what());
  }
  return t;
}

nlohmann::json to_json(const LatencyTrace& t) {
  nlohmann::json j = {{"name", t.name},
                      {"accel", to_json(t.accel)},
                      {"samples_s", t.samples_s}};
  if (!t.labels.empty()) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& [label, conf] : t.labels) {
      labels.push_back({to_string(label), conf});
    }
    j["labels"] = labels;
  }
  if (t.model_size_mb) j["model_size_mb"] = *t.model_size_mb;
  return j;
}

std::vector<LatencyTrace> load_traces(const std::filesystem::path& path) {
  const nlohmann::json doc = read_json_file(path);
  const std::string origin = path.filename().string();
  std::vector<LatencyTrace> out;
  auto load_array = [&](const nlohmann::json& arr, const std::string& prefix) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(trace_from_json(arr[i], prefix + "[" + std::to_string(i) + "]"));
    }
  };
  if (doc.is_array()) {
    load_array(doc, origin);
  } else if (doc.is_object() && doc.contains("traces")) {
    if (!doc["traces"].is_array()) schema_error(origin + ": traces must be an array");
    load_array(doc["traces"], origin + ":traces");
  } else {
    out.push_back(trace_from_json(doc, origin));
  }
  if (out.empty()) schema_error(origin + ": no traces");
  return out;
}

LatencyTrace load_trace(const std::filesystem::path& path,
                        const std::optional<std::string>& name) {
  auto traces = load_traces(path);
  if (!name) {
    if (traces.size() != 1) {
      schema_error(path.string() + " holds " + std::to_string(traces.size()) +
                   " traces; name one");
    }
    return traces.front();
  }
  for (auto& t : traces) {
    if (t.name == *name) return t;
  }
  schema_error("no trace named '" + *name + "' in " + path.string());
}

}  // namespace ew
