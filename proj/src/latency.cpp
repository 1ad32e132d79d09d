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

#include "ew/latency.hpp"

#include <cmath>

#include "ew/error.hpp"

namespace ew {
namespace {

double queue_delay(double n, double per_inference_s) {
  return (n / 2.0 + 1.0) * per_inference_s;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

}  // namespace

LatencyBreakdown decompose_latency(const LatencyParams& p) {
  require(std::isfinite(p.ips) && p.ips > 0.0, "ips must be positive");
  require(p.n >= 0.0 && p.n_star >= 0.0, "queue lengths must be >= 0");
  require(std::isfinite(p.t_cts) && p.t_cts >= 0.0, "t_cts must be >= 0");
  if (p.per_inference_s) {
    require(*p.per_inference_s > 0.0, "per_inference_s must be positive");
  }
  const double step = p.per_inference_s ? *p.per_inference_s : 1.0 / p.ips;

  LatencyBreakdown out;
  out.t_queue = queue_delay(p.n_star, step);
  out.t_servo = p.t_cts - queue_delay(p.n, step);
  out.t_total = out.t_queue + out.t_servo;
  out.negative_servo = out.t_servo < 0.0;
  return out;
}

double predict_total_latency(double n, double per_inference_s,
                             double servo_base_s) {
  require(n >= 0.0, "queue length must be >= 0");
  require(std::isfinite(per_inference_s) && per_inference_s > 0.0,
          "per_inference_s must be positive");
  require(servo_base_s >= 0.0, "servo_base_s must be >= 0");
  return queue_delay(n, per_inference_s) + servo_base_s;
}

}  // namespace ew
