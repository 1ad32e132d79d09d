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

#include <atomic>
#include <memory>

#include "ew/domain.hpp"

namespace ew {

/// Time source for the pipeline and backends. All duration math runs on
/// monotonic time.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
  /// Real clocks block; simulated clocks advance instantly.
  virtual void sleep_for(Timestamp d) = 0;
  /// Moves forward to `t` if it lies in the future.
  virtual void advance_to(Timestamp t) = 0;
  virtual bool simulated() const = 0;
};

class SteadyClock final : public Clock {
 public:
  SteadyClock();
  Timestamp now() const override;
  void sleep_for(Timestamp d) override;
  void advance_to(Timestamp t) override;
  bool simulated() const override { return false; }

 private:
  std::chrono::steady_clock::time_point origin_;
};

/// Virtual clock starting at zero.
class SimulatedClock final : public Clock {
 public:
  explicit SimulatedClock(Timestamp start = Timestamp{0}) : now_(start.count()) {}
  Timestamp now() const override {
    return Timestamp{now_.load(std::memory_order_acquire)};
  }
  void sleep_for(Timestamp d) override;
  void advance_to(Timestamp t) override;
  bool simulated() const override { return true; }

 private:
  std::atomic<Timestamp::rep> now_;
};

std::unique_ptr<Clock> make_clock(bool simulated);

}  // namespace ew
