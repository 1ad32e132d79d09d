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

#include "ew/clock.hpp"

#include <thread>

namespace ew {

SteadyClock::SteadyClock() : origin_(std::chrono::steady_clock::now()) {}

Timestamp SteadyClock::now() const {
  return std::chrono::duration_cast<Timestamp>(
      std::chrono::steady_clock::now() - origin_);
}

void SteadyClock::sleep_for(Timestamp d) {
  if (d.count() > 0) std::this_thread::sleep_for(d);
}

void SteadyClock::advance_to(Timestamp t) { sleep_for(t - now()); }

void SimulatedClock::sleep_for(Timestamp d) {
  if (d.count() > 0) now_.fetch_add(d.count(), std::memory_order_acq_rel);
}

void SimulatedClock::advance_to(Timestamp t) {
  auto cur = now_.load(std::memory_order_acquire);
  while (cur < t.count() &&
         !now_.compare_exchange_weak(cur, t.count(),
                                     std::memory_order_acq_rel)) {
  }
}

std::unique_ptr<Clock> make_clock(bool simulated) {
  if (simulated) return std::make_unique<SimulatedClock>();
  return std::make_unique<SteadyClock>();
}

}  // namespace ew
