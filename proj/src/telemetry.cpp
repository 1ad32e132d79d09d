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

#include "ew/telemetry.hpp"

#include <algorithm>
#include <cmath>

#include "ew/error.hpp"

namespace ew {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

PowerTable table_from_json(const nlohmann::json& j, const PowerTable& base) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kSchemaViolation, "power table must be an object");
  }
  PowerTable t = base;
  auto read = [&](const char* key, double& field) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    bool placeholder = false;
    double watts = 0;
    if (v.is_number()) {
      watts = v.get<double>();
    } else if (v.is_object() && v.contains("watts") && v["watts"].is_number()) {
      watts = v["watts"].get<double>();
      placeholder = v.value("placeholder", false);
    } else {
      throw Error(ErrorKind::kSchemaViolation,
                  std::string("power entry '") + key +
                      "' must be a number or {\"watts\": number}");
    }
    field = watts;
    std::erase(t.placeholders, key);
    if (placeholder) t.placeholders.emplace_back(key);
  };
  read("idle_no_model", t.idle_no_model);
  read("idle_model_loaded", t.idle_model_loaded);
  read("inferencing", t.inferencing);
  return t;
}

nlohmann::json table_to_json(const PowerTable& t) {
  auto entry = [&](const char* key, double w) -> nlohmann::json {
    if (std::find(t.placeholders.begin(), t.placeholders.end(), key) !=
        t.placeholders.end()) {
      return {{"watts", w}, {"placeholder", true}};
    }
    return w;
  };
  return {{"idle_no_model", entry("idle_no_model", t.idle_no_model)},
          {"idle_model_loaded",
           entry("idle_model_loaded", t.idle_model_loaded)},
          {"inferencing", entry("inferencing", t.inferencing)}};
}

}  // namespace

std::string_view to_string(PowerMode m) {
  return m == PowerMode::kFiveWatt ? "five_watt" : "maxn";
}

std::string_view to_string(PowerState s) {
  switch (s) {
    case PowerState::kIdleNoModel: return "idle_no_model";
    case PowerState::kIdleModelLoaded: return "idle_model_loaded";
    case PowerState::kInferencing: return "inferencing";
  }
  return "inferencing";
}

PowerMode parse_power_mode(std::string_view text) {
  if (text == "five_watt" || text == "5w") return PowerMode::kFiveWatt;
  if (text == "maxn") return PowerMode::kMaxn;
  throw Error(ErrorKind::kSchemaViolation,
              "power profile must be five_watt or maxn, got '" +
                  std::string(text) + "'");
}

PowerState parse_power_state(std::string_view text) {
  for (auto s : {PowerState::kIdleNoModel, PowerState::kIdleModelLoaded,
                 PowerState::kInferencing}) {
    if (text == to_string(s)) return s;
  }
  throw Error(ErrorKind::kSchemaViolation,
              "unknown power state '" + std::string(text) + "'");
}

double PowerTable::watts(PowerState s) const {
  switch (s) {
    case PowerState::kIdleNoModel: return idle_no_model;
    case PowerState::kIdleModelLoaded: return idle_model_loaded;
    case PowerState::kInferencing: return inferencing;
  }
  return inferencing;
}

void validate(const PowerTable& t, bool allow_unordered) {
  require(t.idle_no_model > 0 && t.idle_model_loaded > 0 && t.inferencing > 0,
          "power table entries must be positive");
  if (allow_unordered) return;
  require(t.idle_no_model <= t.idle_model_loaded &&
              t.idle_model_loaded <= t.inferencing,
          "power table must satisfy idle_no_model <= idle_model_loaded <= "
          "inferencing (set allow_unordered to override)");
}

const PowerTable& PowerConfig::table(PowerMode m) const {
  auto it = profiles.find(m);
  if (it == profiles.end()) {
    throw Error(ErrorKind::kInvalidArgument,
                "no power table for profile " + std::string(to_string(m)));
  }
  return it->second;
}

double PowerConfig::active_watts() const {
  return table(active_mode).watts(active_state);
}

std::string PowerConfig::active_state_name() const {
  return std::string(to_string(active_state)) + "(" +
         std::string(to_string(active_mode)) + ")";
}

PowerConfig default_power_config() {
  PowerConfig c;
  c.profiles[PowerMode::kMaxn] =
      PowerTable{1.5, 2.0, 5.0, {"idle_no_model"}};
  c.profiles[PowerMode::kFiveWatt] =
      PowerTable{1.5, 2.0, 3.5, {"idle_no_model", "idle_model_loaded"}};
  return c;
}

PowerConfig power_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kSchemaViolation, "power config must be an object");
  }
  PowerConfig c = default_power_config();
  const bool allow_unordered = j.value("allow_unordered", false);
  if (j.contains("profiles")) {
    const auto& profiles = j.at("profiles");
    if (!profiles.is_object()) {
      throw Error(ErrorKind::kSchemaViolation, "power.profiles must be an object");
    }
    for (const auto& [name, table] : profiles.items()) {
      const PowerMode mode = parse_power_mode(name);
      c.profiles[mode] = table_from_json(table, c.profiles[mode]);
    }
  }
  if (j.contains("profile")) {
    c.active_mode = parse_power_mode(j.at("profile").get<std::string>());
  }
  if (j.contains("state")) {
    c.active_state = parse_power_state(j.at("state").get<std::string>());
  }
  for (const auto& [mode, table] : c.profiles) validate(table, allow_unordered);
  return c;
}

nlohmann::json to_json(const PowerConfig& c) {
  nlohmann::json profiles = nlohmann::json::object();
  for (const auto& [mode, table] : c.profiles) {
    profiles[std::string(to_string(mode))] = table_to_json(table);
  }
  return {{"profile", to_string(c.active_mode)},
          {"state", to_string(c.active_state)},
          {"profiles", profiles}};
}

double measure_ips(std::span<const Timestamp> completions, double window_s,
                   std::optional<Timestamp> now) {
  require(std::isfinite(window_s) && window_s > 0, "window must be positive");
  require(std::is_sorted(completions.begin(), completions.end()),
          "completion timestamps must be non-decreasing");
  if (completions.empty()) return 0.0;
  const Timestamp end = now.value_or(completions.back());
  const Timestamp start = end - from_seconds(window_s);
  const auto count = std::count_if(
      completions.begin(), completions.end(),
      [&](Timestamp t) { return t > start && t <= end; });
  return static_cast<double>(count) / window_s;
}

double efficiency(double ips, double watts) {
  require(std::isfinite(watts) && watts > 0, "watts must be positive");
  return ips / watts;
}

double battery_life(double capacity_wh, double avg_power_w) {
  require(std::isfinite(avg_power_w) && avg_power_w > 0,
          "average power must be positive");
  require(capacity_wh >= 0, "capacity must be >= 0");
  return capacity_wh / avg_power_w;
}

nlohmann::json to_json(const TelemetrySample& s, Timestamp origin) {
  return {{"window_start_s", to_seconds(s.window_start - origin)},
          {"window_end_s", to_seconds(s.window_end - origin)},
          {"inference_count", s.inference_count},
          {"ips", s.ips},
          {"mean_inference_s", s.mean_inference_s},
          {"mean_capture_s", s.mean_capture_s},
          {"power_state", s.power_state},
          {"watts", s.watts},
          {"efficiency", s.efficiency}};
}

TelemetryCollector::TelemetryCollector(double window_s, Timestamp origin)
    : origin_(origin) {
  require(std::isfinite(window_s) && window_s > 0,
          "telemetry window must be positive");
  window_ = from_seconds(window_s);
}

void TelemetryCollector::set_power(std::string state_name, double watts) {
  require(watts > 0, "watts must be positive");
  std::lock_guard lock(mu_);
  power_state_ = std::move(state_name);
  watts_ = watts;
}

void TelemetryCollector::prune(std::deque<Record>& records, Timestamp newest) {
  // Keep a few windows of history so out-of-order stages still land.
  const Timestamp horizon = newest - 4 * window_;
  while (!records.empty() && records.front().at < horizon) records.pop_front();
}

void TelemetryCollector::record_capture(Timestamp at, Timestamp duration) {
  std::lock_guard lock(mu_);
  captures_.push_back({at, duration});
  ++capture_count_;
  capture_sum_ns_ += duration.count();
  prune(captures_, at);
}

void TelemetryCollector::record_inference(Timestamp completed_at,
                                          Timestamp duration) {
  std::lock_guard lock(mu_);
  inferences_.push_back({completed_at, duration});
  all_inference_ns_.push_back(duration.count());
  inference_sum_ns_ += duration.count();
  prune(inferences_, completed_at);
}

TelemetrySample TelemetryCollector::sample(Timestamp now) const {
  std::lock_guard lock(mu_);
  TelemetrySample s;
  s.window_end = now;
  s.window_start = std::max(origin_, now - window_);
  s.power_state = power_state_;
  s.watts = watts_;

  Timestamp::rep inf_sum = 0;
  for (const auto& r : inferences_) {
    if (r.at > s.window_start && r.at <= s.window_end) {
      ++s.inference_count;
      inf_sum += r.duration.count();
    }
  }
  std::int64_t cap_count = 0;
  Timestamp::rep cap_sum = 0;
  for (const auto& r : captures_) {
    if (r.at > s.window_start && r.at <= s.window_end) {
      ++cap_count;
      cap_sum += r.duration.count();
    }
  }
  const double span_s = to_seconds(s.window_end - s.window_start);
  if (span_s > 0) s.ips = static_cast<double>(s.inference_count) / span_s;
  if (s.inference_count > 0) {
    s.mean_inference_s =
        static_cast<double>(inf_sum) / static_cast<double>(s.inference_count) / 1e9;
  }
  if (cap_count > 0) {
    s.mean_capture_s =
        static_cast<double>(cap_sum) / static_cast<double>(cap_count) / 1e9;
  }
  s.efficiency = s.watts > 0 ? s.ips / s.watts : 0.0;
  return s;
}

std::int64_t TelemetryCollector::total_inferences() const {
  std::lock_guard lock(mu_);
  return static_cast<std::int64_t>(all_inference_ns_.size());
}

std::int64_t TelemetryCollector::total_captures() const {
  std::lock_guard lock(mu_);
  return capture_count_;
}

double TelemetryCollector::mean_inference_s() const {
  std::lock_guard lock(mu_);
  if (all_inference_ns_.empty()) return 0.0;
  return static_cast<double>(inference_sum_ns_) /
         static_cast<double>(all_inference_ns_.size()) / 1e9;
}

double TelemetryCollector::mean_capture_s() const {
  std::lock_guard lock(mu_);
  if (capture_count_ == 0) return 0.0;
  return static_cast<double>(capture_sum_ns_) /
         static_cast<double>(capture_count_) / 1e9;
}

double TelemetryCollector::median_inference_s() const {
  std::vector<Timestamp::rep> v;
  {
    std::lock_guard lock(mu_);
    v = all_inference_ns_;
  }
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[mid]) / 1e9;
  return (static_cast<double>(v[mid - 1]) + static_cast<double>(v[mid])) / 2.0 /
         1e9;
}

}  // namespace ew
