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

#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "ew/error.hpp"

namespace ew {
namespace {

using std::chrono::milliseconds;

std::vector<Timestamp> evenly_spaced(int count, milliseconds step) {
  std::vector<Timestamp> ts;
  for (int i = 1; i <= count; ++i) ts.push_back(Timestamp{step * i});
  return ts;
}

TEST(MeasureIps, MatchesReciprocalOfPeriod) {
  EXPECT_NEAR(measure_ips(evenly_spaced(100, milliseconds(43)), 4.3), 23.26, 0.01);
  EXPECT_DOUBLE_EQ(measure_ips(evenly_spaced(10, milliseconds(320)), 3.2), 3.125);
  EXPECT_DOUBLE_EQ(measure_ips(evenly_spaced(40, milliseconds(160)), 6.4), 6.25);
}

TEST(MeasureIps, WindowIsHalfOpen) {
  const auto ts = evenly_spaced(10, milliseconds(100));  // 0.1 .. 1.0
  EXPECT_DOUBLE_EQ(measure_ips(ts, 0.5), 10.0);          // (0.5, 1.0]
  EXPECT_DOUBLE_EQ(measure_ips(ts, 0.5, Timestamp{milliseconds(2000)}), 0.0);
}

TEST(MeasureIps, EdgeCases) {
  EXPECT_EQ(measure_ips({}, 1.0), 0.0);
  const std::vector<Timestamp> unsorted{Timestamp{5}, Timestamp{1}};
  EXPECT_THROW(measure_ips(unsorted, 1.0), Error);
  EXPECT_THROW(measure_ips(evenly_spaced(3, milliseconds(1)), 0.0), Error);
}

TEST(MeasureIpsProperty, ScalingTimeScalesRate) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int step_ms = 5 + static_cast<int>(rng() % 300);
    const int k = 1 + static_cast<int>(rng() % 5);
    const int count = 20 + static_cast<int>(rng() % 80);
    const double window = count * step_ms / 1000.0;
    const double base = measure_ips(evenly_spaced(count, milliseconds(step_ms)), window);
    const double scaled =
        measure_ips(evenly_spaced(count, milliseconds(step_ms * k)), window * k);
    ASSERT_NEAR(scaled * k, base, 1e-9 * base);
  }
}

TEST(Efficiency, ReferenceFigures) {
  EXPECT_DOUBLE_EQ(efficiency(17, 5.0), 3.4);
  EXPECT_NEAR(efficiency(11, 3.5), 3.142857142857143, 1e-12);
  EXPECT_GT(efficiency(17, 5.0), efficiency(11, 3.5));
  EXPECT_THROW(efficiency(17, 0), Error);
}

TEST(BatteryLife, ReferenceFigures) {
  EXPECT_EQ(battery_life(25, 2), 12.5);
  EXPECT_EQ(battery_life(1400, 2), 700.0);
  EXPECT_THROW(battery_life(25, 0), Error);
}

TEST(PowerConfig, DefaultsCarryReferenceFigures) {
  const auto c = default_power_config();
  const auto& maxn = c.table(PowerMode::kMaxn);
  EXPECT_EQ(maxn.inferencing, 5.0);
  EXPECT_EQ(maxn.idle_model_loaded, 2.0);
  EXPECT_EQ(c.table(PowerMode::kFiveWatt).inferencing, 3.5);
  EXPECT_FALSE(maxn.placeholders.empty());
  EXPECT_EQ(c.active_watts(), 5.0);
  EXPECT_EQ(c.active_state_name(), "inferencing(maxn)");
}

TEST(PowerConfig, ParsesNumbersAndPlaceholders) {
  const auto j = nlohmann::json::parse(R"({
    "profile": "5w", "state": "idle_model_loaded",
    "profiles": {"five_watt": {"idle_no_model": {"watts": 1.2, "placeholder": true},
                               "idle_model_loaded": 1.8, "inferencing": 3.4}}})");
  const auto c = power_config_from_json(j);
  EXPECT_EQ(c.active_mode, PowerMode::kFiveWatt);
  EXPECT_EQ(c.active_watts(), 1.8);
  EXPECT_EQ(c.table(PowerMode::kFiveWatt).placeholders,
            std::vector<std::string>{"idle_no_model"});
  EXPECT_EQ(c.table(PowerMode::kMaxn).inferencing, 5.0);
  const auto again = power_config_from_json(to_json(c));
  EXPECT_EQ(again.table(PowerMode::kFiveWatt).idle_no_model, 1.2);
}

TEST(PowerConfig, RejectsBadTables) {
  PowerTable t{2.0, 1.0, 5.0, {}};
  EXPECT_THROW(validate(t), Error);
  EXPECT_NO_THROW(validate(t, true));
  t = {1.0, 2.0, 0.0, {}};
  EXPECT_THROW(validate(t, true), Error);
  EXPECT_THROW(power_config_from_json(nlohmann::json::parse(R"({"profile": "turbo"})")), Error);
  EXPECT_THROW(power_config_from_json(nlohmann::json::parse(
                   R"({"profiles": {"maxn": {"inferencing": "five"}}})")),
               Error);
}

TEST(TelemetryCollector, WindowedSample) {
  TelemetryCollector c(1.0);
  c.set_power("inferencing(maxn)", 5.0);
  for (int i = 1; i <= 23; ++i) {
    c.record_inference(Timestamp{milliseconds(43 * i)}, Timestamp{milliseconds(43)});
    c.record_capture(Timestamp{milliseconds(43 * i - 20)}, Timestamp{milliseconds(20)});
  }
  const auto s = c.sample(Timestamp{milliseconds(1000)});
  EXPECT_EQ(s.inference_count, 23);
  EXPECT_DOUBLE_EQ(s.ips, 23.0);
  EXPECT_DOUBLE_EQ(s.mean_inference_s, 0.043);
  EXPECT_DOUBLE_EQ(s.mean_capture_s, 0.020);
  EXPECT_DOUBLE_EQ(s.efficiency, 23.0 / 5.0);
  EXPECT_EQ(c.total_inferences(), 23);
  EXPECT_DOUBLE_EQ(c.mean_inference_s(), 0.043);
  EXPECT_DOUBLE_EQ(c.median_inference_s(), 0.043);
}

TEST(TelemetryCollector, EarlyWindowIsClampedToOrigin) {
  TelemetryCollector c(1.0);
  c.record_inference(Timestamp{milliseconds(100)}, Timestamp{milliseconds(100)});
  c.record_inference(Timestamp{milliseconds(200)}, Timestamp{milliseconds(100)});
  EXPECT_DOUBLE_EQ(c.sample(Timestamp{milliseconds(250)}).ips, 8.0);
  EXPECT_EQ(c.sample(Timestamp{0}).ips, 0.0);
}

TEST(TelemetryCollector, ConcurrentRecordersAreConsistent) {
  TelemetryCollector c(10.0);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&c, t] {
      for (int i = 0; i < 500; ++i) {
        c.record_inference(Timestamp{milliseconds(i + 1)}, Timestamp{milliseconds(10 + t)});
        c.record_capture(Timestamp{milliseconds(i + 1)}, Timestamp{milliseconds(1)});
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(c.total_inferences(), 2000);
  EXPECT_EQ(c.total_captures(), 2000);
  EXPECT_DOUBLE_EQ(c.mean_inference_s(), 0.0115);
  EXPECT_EQ(c.sample(Timestamp{milliseconds(500)}).inference_count, 2000);
}

}  // namespace
}  // namespace ew
