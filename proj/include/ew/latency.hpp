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

#include <optional>

namespace ew {

/// Inputs to the queue/servo latency split.
struct LatencyParams {
  double n = 10;        // queue length used when t_cts was measured
  double n_star = 10;   // queue length to predict for
  double ips = 17;      // model throughput
  double t_cts = 1.0;   // measured classification-to-servo delay, seconds
  std::optional<double> per_inference_s;  // overrides 1/ips when set
  double servo_base_s = 0.0;
};

struct LatencyBreakdown {
  double t_queue = 0;
  double t_servo = 0;
  double t_total = 0;
  /// Set when t_servo came out negative: t_cts is too small for the stated
  /// queue length and throughput.
  bool negative_servo = false;
};

/// t_queue = (N*/2 + 1) / IPS, t_servo = t_cts - (N/2 + 1) / IPS.
/// N/2 is real-valued. Throws Error(kInvalidArgument) for ips <= 0 or
/// negative queue lengths / t_cts.
LatencyBreakdown decompose_latency(const LatencyParams& p);

/// per_inference_s * (N/2 + 1) + servo_base_s.
double predict_total_latency(double n, double per_inference_s,
                             double servo_base_s);

}  // namespace ew
