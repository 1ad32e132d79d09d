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

#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ew/domain.hpp"
#include "json.hpp"

namespace ew {

enum class PowerMode { kFiveWatt, kMaxn };
enum class PowerState { kIdleNoModel, kIdleModelLoaded, kInferencing };

std::string_view to_string(PowerMode m);
std::string_view to_string(PowerState s);
PowerMode parse_power_mode(std::string_view text);
PowerState parse_power_state(std::string_view text);

/// Average board power per usage state, in Watts.
struct PowerTable {
  double idle_no_model = 0;
  double idle_model_loaded = 0;
  double inferencing = 0;
  /// Entries with no measured value behind them (user must measure).
  std::vector<std::string> placeholders;

  double watts(PowerState s) const;
};

/// Throws Error(kInvalidArgument) unless every entry is > 0 and, unless
/// `allow_unordered`, idle_no_model <= idle_model_loaded <= inferencing.
void validate(const PowerTable& t, bool allow_unordered = false);

struct PowerProfile {
  PowerMode mode = PowerMode::kMaxn;
  PowerTable table;
};

/// Power section of a run config: the available profiles plus which one and
/// which state the board is in.
struct PowerConfig {
  std::map<PowerMode, PowerTable> profiles;
  PowerMode active_mode = PowerMode::kMaxn;
  PowerState active_state = PowerState::kInferencing;

  const PowerTable& table(PowerMode m) const;
  double active_watts() const;
  std::string active_state_name() const;
};

/// Board figures quoted for the reference deployment: 2 W idle with a model
/// loaded, 5 W inferencing at MAXN, 3.5 W inferencing in 5 W mode. Idle with
/// no model and 5 W-mode idle are unmeasured placeholders.
PowerConfig default_power_config();

/// Accepts {"profile": "maxn", "state": "inferencing", "allow_unordered":
/// false, "profiles": {"maxn": {"idle_no_model": 1.0 | {"watts": 1.0,
/// "placeholder": true}, ...}, "five_watt": {...}}}. Missing profiles fall
/// back to the defaults.
PowerConfig power_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PowerConfig& c);

/// Completions in (now - window, now] divided by the window, where `now`
/// defaults to the last event. Empty input yields 0. Throws
/// Error(kInvalidArgument) for window <= 0 or unsorted timestamps.
double measure_ips(std::span<const Timestamp> completions, double window_s,
                   std::optional<Timestamp> now = std::nullopt);

/// Inferences per second per Watt.
double efficiency(double ips, double watts);

/// Hours a battery of `capacity_wh` lasts at `avg_power_w`.
double battery_life(double capacity_wh, double avg_power_w);

struct TelemetrySample {
  Timestamp window_start{0};
  Timestamp window_end{0};
  std::int64_t inference_count = 0;
  double ips = 0;
  double mean_inference_s = 0;
  double mean_capture_s = 0;
  std::string power_state;
  double watts = 0;
  double efficiency = 0;
};

nlohmann::json to_json(const TelemetrySample& s, Timestamp origin);

inline constexpr double kDefaultTelemetryWindowS = 1.0;

/// Thread-safe sink for per-stage durations. `sample` takes a consistent
/// snapshot under the same lock the recorders use.
class TelemetryCollector {
 public:
  explicit TelemetryCollector(double window_s = kDefaultTelemetryWindowS,
                              Timestamp origin = Timestamp{0});

  void set_power(std::string state_name, double watts);
  void record_capture(Timestamp at, Timestamp duration);
  void record_inference(Timestamp completed_at, Timestamp duration);

  TelemetrySample sample(Timestamp now) const;

  std::int64_t total_inferences() const;
  std::int64_t total_captures() const;
  /// Mean over every inference recorded so far.
  double mean_inference_s() const;
  double mean_capture_s() const;
  double median_inference_s() const;
  Timestamp origin() const { return origin_; }

 private:
  struct Record {
    Timestamp at;
    Timestamp duration;
  };
  void prune(std::deque<Record>& records, Timestamp newest);

  mutable std::mutex mu_;
  Timestamp window_;
  Timestamp origin_;
  std::string power_state_ = "inferencing";
  double watts_ = 0;
  std::deque<Record> captures_;
  std::deque<Record> inferences_;
  std::vector<Timestamp::rep> all_inference_ns_;
  std::int64_t capture_count_ = 0;
  Timestamp::rep capture_sum_ns_ = 0;
  Timestamp::rep inference_sum_ns_ = 0;
};

}  // namespace ew
